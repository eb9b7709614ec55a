"""Recursive-descent parser from CBDDL text to :class:`TaskSpec`.

File layout::

    (define (problem NAME)
      (:domain DOMAIN)
      (:language "instruction")            ; optional
      (:objects (NAME CATEGORY [(:parts (IDX sphere R (X Y Z)) (IDX box (HX HY HZ) (X Y Z)))]) ...)
      (:moving_objects (NAME (:motion_type linear) (:motion_period 125) ...) ...)
      (:init ATOM ...)
      (:goal EXPR)
      (:cost EXPR ...)                     ; optional
      (:image_settings (:brightness D) (:contrast D) (:saturation D) (:temperature K))
      (:noise gaussian MEAN VAR | salt_pepper PROB | none)
      (:camera NAME [(DX DY DZ)] ...)
      (:random_color true|false))

Blocks may appear in any order; each at most once.
"""

from __future__ import annotations

from .errors import ParseError
from .model import (
    MOTION_TYPES,
    SHAPES,
    CameraDecl,
    Expr,
    GaussianNoise,
    MotionSpec,
    ObjectDecl,
    PartDecl,
    SaltPepperNoise,
    TaskSpec,
    VisualSpec,
    default_part,
)
from .sexpr import KEYWORD, NUMBER, STRING, SYMBOL, Atom, SExpr, SList, read_all

BLOCKS = (
    ":domain",
    ":language",
    ":objects",
    ":moving_objects",
    ":init",
    ":goal",
    ":cost",
    ":image_settings",
    ":noise",
    ":camera",
    ":random_color",
)

MOTION_ATTRS = {
    ":motion_period": ("period", "num"),
    ":motion_travel_dist": ("travel_dist", "num"),
    ":motion_direction": ("direction", "vec3"),
    ":motion_center": ("center", "vec3"),
    ":motion_waypoints": ("waypoints", "waypoints"),
    ":motion_initial_speed": ("initial_speed", "num"),
    ":motion_gravity": ("gravity", "vec3"),
}

IMAGE_KEYS = (":brightness", ":contrast", ":saturation", ":temperature")


def _describe(x: SExpr) -> str:
    if isinstance(x, Atom):
        return x.text
    head = x.head()
    return f"({head} ...)" if head else "(...)"


def _fail(msg: str, x: SExpr) -> ParseError:
    return ParseError(msg, x.span, _describe(x))


def _symbol(x: SExpr, what: str) -> str:
    if isinstance(x, Atom) and x.kind == SYMBOL:
        return x.value  # type: ignore[return-value]
    raise _fail(f"expected {what}, got {_describe(x)!r}", x)


def _number(x: SExpr, what: str):
    if isinstance(x, Atom) and x.kind == NUMBER:
        return x.value
    raise _fail(f"expected number for {what}, got {_describe(x)!r}", x)


def _numlist(x: SExpr, what: str, length: int | None = None) -> tuple:
    if not isinstance(x, SList):
        raise _fail(f"expected number list for {what}, got {_describe(x)!r}", x)
    vals = tuple(_number(i, what) for i in x.items)
    if length is not None and len(vals) != length:
        raise _fail(f"{what} needs {length} numbers, got {len(vals)}", x)
    return vals


def _expect_len(block: SList, n: int, name: str) -> None:
    if len(block.items) != n:
        raise _fail(f"{name} takes {n - 1} argument(s), got {len(block.items) - 1}", block)


def parse_expr(x: SExpr) -> Expr:
    if not isinstance(x, SList) or not x.items:
        raise _fail(f"expected expression, got {_describe(x)!r}", x)
    head = x.items[0]
    if not (isinstance(head, Atom) and head.kind == SYMBOL):
        raise _fail(f"expression must start with a name, got {_describe(head)!r}", head)
    name = head.value
    rest = x.items[1:]
    if name in ("And", "Or"):
        if len(rest) < 2:
            raise ParseError(f"{name} requires >=2 children, got {len(rest)}", x.span, name)
        return Expr(name, tuple(parse_expr(c) for c in rest), span=x.span)
    if name == "Not":
        if len(rest) != 1:
            raise ParseError(f"Not requires exactly 1 child, got {len(rest)}", x.span, name)
        return Expr("Not", (parse_expr(rest[0]),), span=x.span)
    args = []
    for a in rest:
        if isinstance(a, SList):
            args.append(_numlist(a, f"argument of {name}"))
        elif a.kind in (SYMBOL, NUMBER):
            args.append(a.value)
        else:
            raise _fail(f"unexpected argument {a.text!r} to {name}", a)
    return Expr("Atom", (), name, tuple(args), x.span)  # type: ignore[arg-type]


def _parse_part(x: SExpr) -> PartDecl:
    if not isinstance(x, SList) or len(x.items) not in (3, 4):
        raise _fail("part must be (INDEX SHAPE SIZE [OFFSET])", x)
    idx = _number(x.items[0], "part index")
    if not isinstance(idx, int) or idx < 0:
        raise _fail(f"part index must be a non-negative integer, got {x.items[0].text}", x.items[0])
    shape = _symbol(x.items[1], "part shape")
    if shape not in SHAPES:
        raise _fail(f"unknown part shape {shape!r}", x.items[1])
    if shape == "sphere":
        size = (_number(x.items[2], "sphere radius"),)
    else:
        size = _numlist(x.items[2], "box half-extents", 3)
    offset = _numlist(x.items[3], "part offset", 3) if len(x.items) == 4 else (0, 0, 0)
    return PartDecl(idx, shape, size, offset, x.span)


def _parse_object(x: SExpr) -> ObjectDecl:
    if not isinstance(x, SList) or len(x.items) not in (2, 3):
        raise _fail("object declaration must be (NAME CATEGORY [(:parts ...)])", x)
    name = _symbol(x.items[0], "object name")
    cat = _symbol(x.items[1], "object category")
    parts: tuple = (default_part(),)
    if len(x.items) == 3:
        pb = x.items[2]
        if not isinstance(pb, SList) or pb.head() != ":parts":
            raise _fail(f"expected (:parts ...) in declaration of {name}", pb)
        parts = tuple(_parse_part(p) for p in pb.items[1:])
        if not parts:
            raise _fail(f"object {name} declares no parts", pb)
    return ObjectDecl(name, cat, parts, x.span)


def _parse_motion(x: SExpr) -> MotionSpec:
    if not isinstance(x, SList) or not x.items:
        raise _fail("moving object entry must be (NAME (:motion_type T) ...)", x)
    name = _symbol(x.items[0], "moving object name")
    fields: dict = {}
    mtype = None
    for attr in x.items[1:]:
        if not isinstance(attr, SList) or len(attr.items) != 2 or attr.head() is None:
            raise _fail("motion attribute must be (:KEY VALUE)", attr)
        key = attr.head()
        val = attr.items[1]
        if key == ":motion_type":
            if mtype is not None:
                raise _fail("duplicate :motion_type", attr)
            mtype = _symbol(val, "motion type")
            if mtype not in MOTION_TYPES:
                raise _fail(f"unknown motion type {mtype!r}", val)
            continue
        if key not in MOTION_ATTRS:
            raise _fail(f"unknown motion attribute {key}", attr.items[0])
        field_name, kind = MOTION_ATTRS[key]
        if field_name in fields:
            raise _fail(f"duplicate {key}", attr)
        if kind == "num":
            fields[field_name] = _number(val, key)
        elif kind == "vec3":
            fields[field_name] = _numlist(val, key, 3)
        else:
            if not isinstance(val, SList):
                raise _fail(f"{key} expects a list of 6-tuples", val)
            fields[field_name] = tuple(_numlist(w, "waypoint", 6) for w in val.items)
    if mtype is None:
        raise _fail(f"moving object {name} lacks :motion_type", x)
    return MotionSpec(name, mtype, span=x.span, **fields)


def _parse_visual(blocks: dict) -> tuple[VisualSpec | None, tuple]:
    kw: dict = {}
    if ":image_settings" in blocks:
        for item in blocks[":image_settings"].items[1:]:
            if not isinstance(item, SList) or len(item.items) != 2 or item.head() not in IMAGE_KEYS:
                raise _fail("image setting must be (:brightness|:contrast|:saturation|:temperature VALUE)", item)
            key = item.head()[1:]  # type: ignore[index]
            if key in kw:
                raise _fail(f"duplicate image setting :{key}", item)
            kw[key] = _number(item.items[1], ":" + key)
    if ":noise" in blocks:
        b = blocks[":noise"]
        if len(b.items) < 2:
            raise _fail(":noise needs a mode", b)
        mode = _symbol(b.items[1], "noise mode")
        if mode == "gaussian":
            _expect_len(b, 4, ":noise gaussian")
            kw["noise"] = GaussianNoise(_number(b.items[2], "mean"), _number(b.items[3], "var"))
        elif mode == "salt_pepper":
            _expect_len(b, 3, ":noise salt_pepper")
            kw["noise"] = SaltPepperNoise(_number(b.items[2], "prob"))
        elif mode == "none":
            _expect_len(b, 2, ":noise none")
        else:
            raise _fail(f"unknown noise mode {mode!r}", b.items[1])
    if ":random_color" in blocks:
        b = blocks[":random_color"]
        _expect_len(b, 2, ":random_color")
        flag = _symbol(b.items[1], "true/false")
        if flag not in ("true", "false"):
            raise _fail(f":random_color expects true or false, got {flag!r}", b.items[1])
        kw["random_color"] = flag == "true"
    cameras = []
    if ":camera" in blocks:
        items = blocks[":camera"].items[1:]
        i = 0
        while i < len(items):
            cname = _symbol(items[i], "camera name")
            offset = None
            if i + 1 < len(items) and isinstance(items[i + 1], SList):
                offset = _numlist(items[i + 1], f"offset of camera {cname}", 3)
                i += 1
            cameras.append(CameraDecl(cname, offset))
            i += 1
    visual = VisualSpec(**kw)
    return (visual if visual != VisualSpec() else None), tuple(cameras)


def parse_problem(source: str) -> TaskSpec:
    """Parse one CBDDL problem file."""
    forms = read_all(source)
    if not forms:
        raise ParseError("empty input: expected (define (problem NAME) ...)", None)
    if len(forms) > 1:
        raise _fail("unexpected form after problem definition", forms[1])
    top = forms[0]
    if not isinstance(top, SList) or top.head() != "define":
        raise _fail("expected (define (problem NAME) ...)", top)
    if len(top.items) < 2:
        raise _fail("missing (problem NAME)", top)
    ph = top.items[1]
    if not isinstance(ph, SList) or ph.head() != "problem" or len(ph.items) != 2:
        raise _fail("expected (problem NAME)", ph)
    name = _symbol(ph.items[1], "problem name")

    blocks: dict[str, SList] = {}
    for b in top.items[2:]:
        if not isinstance(b, SList) or not b.items:
            raise _fail("expected a (:block ...)", b)
        head = b.items[0]
        if not (isinstance(head, Atom) and head.kind == KEYWORD):
            raise _fail(f"expected block keyword, got {_describe(head)!r}", head)
        if head.value not in BLOCKS:
            raise ParseError(f"unknown block keyword {head.value}", head.span, head.text)
        if head.value in blocks:
            raise ParseError(f"duplicate block {head.value}", head.span, head.text)
        blocks[head.value] = b  # type: ignore[index]

    if ":domain" not in blocks:
        raise ParseError("missing (:domain NAME) block", top.span, name)
    _expect_len(blocks[":domain"], 2, ":domain")
    domain = _symbol(blocks[":domain"].items[1], "domain name")

    language = None
    if ":language" in blocks:
        b = blocks[":language"]
        _expect_len(b, 2, ":language")
        if not (isinstance(b.items[1], Atom) and b.items[1].kind == STRING):
            raise _fail(":language expects a quoted string", b.items[1])
        language = b.items[1].value

    objects = tuple(_parse_object(o) for o in blocks[":objects"].items[1:]) if ":objects" in blocks else ()
    movers = (
        tuple(_parse_motion(m) for m in blocks[":moving_objects"].items[1:]) if ":moving_objects" in blocks else ()
    )
    init = []
    if ":init" in blocks:
        for a in blocks[":init"].items[1:]:
            e = parse_expr(a)
            if not e.is_atom:
                raise _fail(f":init accepts only ground atoms, got {e.kind}", a)
            init.append(e)

    if ":goal" not in blocks:
        raise ParseError("missing (:goal EXPR) block", top.span, name)
    gb = blocks[":goal"]
    if len(gb.items) != 2:
        raise _fail(f":goal takes exactly one expression, got {len(gb.items) - 1}", gb)
    goal = parse_expr(gb.items[1])

    cost = tuple(parse_expr(c) for c in blocks[":cost"].items[1:]) if ":cost" in blocks else ()
    visual, cameras = _parse_visual(blocks)

    return TaskSpec(
        name=name,
        domain=domain,
        goal=goal,
        objects=objects,
        moving_objects=movers,
        init=tuple(init),
        cost=cost,
        language=language,
        visual=visual,
        cameras=cameras,
        span=top.span,
    )


def parse_file(path) -> TaskSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
