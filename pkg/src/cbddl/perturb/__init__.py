"""Language (W0-W4) and visual (V0-V4) perturbations."""

from .image import (
    ImageBuffer,
    apply_enhancement,
    apply_gaussian_noise,
    apply_profile,
    apply_salt_pepper,
    read_ppm,
    write_ppm,
)
from .language import (
    InstructionTemplate,
    Lexicon,
    enumerate_variants,
    load_lexicon,
    sample_training_instruction,
    substitute,
)
from .visual import VisualProfile, perturb_camera, sample_profile

__all__ = [
    "ImageBuffer",
    "InstructionTemplate",
    "Lexicon",
    "VisualProfile",
    "apply_enhancement",
    "apply_gaussian_noise",
    "apply_profile",
    "apply_salt_pepper",
    "enumerate_variants",
    "load_lexicon",
    "perturb_camera",
    "read_ppm",
    "sample_profile",
    "sample_training_instruction",
    "substitute",
    "write_ppm",
]
