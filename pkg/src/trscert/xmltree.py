"""A small XML 1.0 subset: parser, canonical printer, whitespace-insensitive comparison.

Supported: an optional XML declaration, elements, attributes, character
data, comments, the five predefined entities and numeric character
references.  DOCTYPE, CDATA sections and processing instructions are
rejected.  Namespaces are not interpreted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

Attributes = tuple[tuple[str, str], ...]

_NAME = re.compile(r"[A-Za-z_:À-￿][-A-Za-z0-9_:.·À-￿]*")
_SPACE = re.compile(r"[ \t\r\n]*")
_ENTITIES = {"lt": "<", "gt": ">", "amp": "&", "quot": '"', "apos": "'"}
_REFERENCE = re.compile(r"&(#[0-9]+|#x[0-9A-Fa-f]+|[A-Za-z]+);")
_INVALID_CHAR = re.compile("[^\t\n\r\x20-\ud7ff\ue000-\ufffd\U00010000-\U0010ffff]")


class ParseError(Exception):
    """Malformed input (XML syntax or document structure)."""


class XmlSyntaxError(ParseError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class XmlText:
    content: str


@dataclass(frozen=True)
class XmlElement:
    name: str
    attributes: Attributes = ()
    children: tuple["XmlNode", ...] = ()

    def elements(self) -> list["XmlElement"]:
        return [c for c in self.children if isinstance(c, XmlElement)]

    def text(self) -> str:
        return "".join(c.content for c in self.children if isinstance(c, XmlText))

    def attribute(self, name: str) -> Optional[str]:
        for key, value in self.attributes:
            if key == name:
                return value
        return None


XmlNode = Union[XmlElement, XmlText]


@dataclass(frozen=True)
class XmlDocument:
    root: XmlElement
    declaration: Optional[Attributes] = None


@dataclass
class _Parser:
    src: str
    pos: int = 0
    stack: list = field(default_factory=list)

    def fail(self, message: str, at: Optional[int] = None) -> XmlSyntaxError:
        at = self.pos if at is None else at
        line = self.src.count("\n", 0, at) + 1
        column = at - (self.src.rfind("\n", 0, at) + 1) + 1
        return XmlSyntaxError(message, line, column)

    def startswith(self, s: str) -> bool:
        return self.src.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.startswith(s):
            raise self.fail(f"expected {s!r}")
        self.pos += len(s)

    def skip_space(self) -> bool:
        m = _SPACE.match(self.src, self.pos)
        self.pos = m.end()
        return m.end() > m.start()

    def name(self) -> str:
        m = _NAME.match(self.src, self.pos)
        if not m:
            raise self.fail("expected a name")
        self.pos = m.end()
        return m.group()

    def decode(self, raw: str, start: int) -> str:
        out = []
        i = 0
        while True:
            j = raw.find("&", i)
            if j < 0:
                out.append(raw[i:])
                return "".join(out)
            out.append(raw[i:j])
            m = _REFERENCE.match(raw, j)
            if not m:
                raise self.fail("'&' must start an entity reference", start + j)
            out.append(self.reference(m.group(1), start + j))
            i = m.end()

    def reference(self, ref: str, at: int) -> str:
        if ref in _ENTITIES:
            return _ENTITIES[ref]
        if ref.startswith("#x"):
            code = int(ref[2:], 16)
        elif ref.startswith("#"):
            code = int(ref[1:])
        else:
            raise self.fail(f"undefined entity &{ref};", at)
        if code > 0x10FFFF or _INVALID_CHAR.match(chr(code)):
            raise self.fail(f"invalid character reference &{ref};", at)
        return chr(code)

    def attributes(self) -> Attributes:
        attrs: list[tuple[str, str]] = []
        while True:
            had_space = self.skip_space()
            if self.startswith(">") or self.startswith("/>") or self.startswith("?>"):
                return tuple(attrs)
            if not had_space:
                raise self.fail("expected whitespace before attribute")
            key_at = self.pos
            key = self.name()
            self.skip_space()
            self.expect("=")
            self.skip_space()
            quote = self.src[self.pos : self.pos + 1]
            if quote not in ("'", '"'):
                raise self.fail("attribute value must be quoted")
            end = self.src.find(quote, self.pos + 1)
            if end < 0:
                raise self.fail("unterminated attribute value")
            raw = self.src[self.pos + 1 : end]
            if "<" in raw:
                raise self.fail("'<' in attribute value", self.pos + 1 + raw.index("<"))
            value = self.decode(re.sub(r"[\t\n]", " ", raw), self.pos + 1)
            if any(k == key for k, _ in attrs):
                raise self.fail(f"duplicate attribute {key!r}", key_at)
            attrs.append((key, value))
            self.pos = end + 1

    def comment(self) -> None:
        end = self.src.find("-->", self.pos + 4)
        if end < 0:
            raise self.fail("unterminated comment")
        if "--" in self.src[self.pos + 4 : end]:
            raise self.fail("'--' inside comment")
        self.pos = end + 3

    def misc(self) -> None:
        while True:
            self.skip_space()
            if self.startswith("<!--"):
                self.comment()
            else:
                return

    def unsupported(self) -> None:
        if self.startswith("<![CDATA["):
            raise self.fail("CDATA sections are not supported")
        if self.startswith("<!"):
            raise self.fail("DOCTYPE and other declarations are not supported")
        if self.startswith("<?"):
            raise self.fail("processing instructions are not supported")

    def declaration(self) -> Optional[Attributes]:
        if not self.startswith("<?xml") or _NAME.match(self.src, self.pos + 2).end() != self.pos + 5:
            return None
        start = self.pos
        self.pos += 5
        attrs = self.attributes()
        self.expect("?>")
        keys = [k for k, _ in attrs]
        if not keys or keys[0] != "version" or keys not in (
            ["version"],
            ["version", "encoding"],
            ["version", "standalone"],
            ["version", "encoding", "standalone"],
        ):
            raise self.fail("malformed XML declaration", start)
        values = dict(attrs)
        if values["version"] != "1.0":
            raise self.fail("only XML version 1.0 is supported", start)
        if values.get("encoding", "UTF-8").upper() not in ("UTF-8", "UTF8"):
            raise self.fail("only UTF-8 encoding is supported", start)
        if values.get("standalone", "yes") not in ("yes", "no"):
            raise self.fail("malformed standalone declaration", start)
        return attrs

    def document(self) -> XmlDocument:
        if self.startswith("﻿"):
            self.pos += 1
        decl = self.declaration()
        self.misc()
        self.unsupported()
        if not self.startswith("<"):
            raise self.fail("expected root element")
        root = self.element()
        self.misc()
        if self.pos != len(self.src):
            self.unsupported()
            raise self.fail("content after the root element")
        return XmlDocument(root, decl)

    def element(self) -> XmlElement:
        # iterative, so deeply nested input cannot exhaust the Python stack
        self.expect("<")
        root = self._open()
        if root is not None:
            return root
        while self.stack:
            text_start = self.pos
            lt = self.src.find("<", self.pos)
            if lt < 0:
                raise self.fail(f"unclosed element <{self.stack[-1][0]}>", self.stack[-1][3])
            if lt > self.pos:
                raw = self.src[self.pos : lt]
                if "]]>" in raw:
                    raise self.fail("']]>' in character data", text_start + raw.index("]]>"))
                self.stack[-1][2].append(self.decode(raw, text_start))
                self.pos = lt
            if self.startswith("</"):
                at = self.pos
                self.pos += 2
                name = self.name()
                self.skip_space()
                self.expect(">")
                open_name, attrs, children, _ = self.stack.pop()
                if name != open_name:
                    raise self.fail(f"mismatched tag: expected </{open_name}>, found </{name}>", at)
                done = XmlElement(open_name, attrs, _merge(children))
                if not self.stack:
                    return done
                self.stack[-1][2].append(done)
            elif self.startswith("<!--"):
                self.comment()
            elif self.startswith("<!") or self.startswith("<?"):
                self.unsupported()
            else:
                self.pos += 1
                leaf = self._open()
                if leaf is not None:
                    self.stack[-1][2].append(leaf)
        raise AssertionError("unreachable")

    def _open(self) -> Optional[XmlElement]:
        """Parse a start tag after '<'; return the element if it was empty."""
        at = self.pos - 1
        name = self.name()
        attrs = self.attributes()
        if self.startswith("/>"):
            self.pos += 2
            return XmlElement(name, attrs, ())
        self.expect(">")
        self.stack.append((name, attrs, [], at))
        return None


def _merge(children: list) -> tuple[XmlNode, ...]:
    out: list[XmlNode] = []
    for c in children:
        if isinstance(c, str):
            if out and isinstance(out[-1], XmlText):
                out[-1] = XmlText(out[-1].content + c)
            elif c:
                out.append(XmlText(c))
        else:
            out.append(c)
    return tuple(out)


def parse_xml(data: Union[bytes, str]) -> XmlDocument:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = data[: exc.start]
            line = prefix.count(b"\n") + 1
            column = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise XmlSyntaxError("input is not valid UTF-8", line, column) from None
    data = data.replace("\r\n", "\n").replace("\r", "\n")
    parser = _Parser(data)
    bad = _INVALID_CHAR.search(data)
    if bad:
        raise parser.fail(f"invalid character U+{ord(bad.group()):04X}", bad.start())
    return parser.document()


# -- printing ----------------------------------------------------------------


def escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def escape_attribute(s: str) -> str:
    return escape_text(s).replace('"', "&quot;")


def _start_tag(el: XmlElement) -> str:
    attrs = "".join(f' {k}="{escape_attribute(v)}"' for k, v in el.attributes)
    return f"<{el.name}{attrs}"


def to_string(node: Union[XmlDocument, XmlElement], indent: Optional[str] = "  ") -> str:
    """Render with one element per line; elements holding only text stay inline.

    ``indent=None`` renders everything on a single line.
    """
    lines: list[str] = []
    if isinstance(node, XmlDocument):
        if node.declaration is not None:
            attrs = "".join(f' {k}="{escape_attribute(v)}"' for k, v in node.declaration)
            lines.append(f"<?xml{attrs}?>")
        node = node.root
    if indent is None:
        _render(node, 0, "", lines)
        return "".join(lines) + "\n"
    _render(node, 0, indent, lines)
    return "\n".join(lines) + "\n"


def _render(el: XmlElement, depth: int, indent: str, lines: list[str]) -> None:
    pad = indent * depth
    if not el.children:
        lines.append(f"{pad}{_start_tag(el)}/>")
    elif all(isinstance(c, XmlText) for c in el.children):
        lines.append(f"{pad}{_start_tag(el)}>{escape_text(el.text())}</{el.name}>")
    else:
        lines.append(f"{pad}{_start_tag(el)}>")
        for c in el.children:
            if isinstance(c, XmlText):
                if c.content.strip():
                    lines.append(pad + indent + escape_text(c.content.strip()))
            else:
                _render(c, depth + 1, indent, lines)
        lines.append(f"{pad}</{el.name}>")


# -- comparison modulo whitespace ---------------------------------------------

_WS = re.compile(r"[ \t\r\n]+")
_OPEN_TOKEN = re.compile(r"<(/|\?|!)?([^\s<>/?=\"']+)")
_TAG_TOKEN = re.compile(
    r"""[ \t\r\n]*(?:
        (?P<end>/>|\?>|>)
      | (?P<name>[^\s=<>/?"']+)[ \t\r\n]*=[ \t\r\n]*(?:"(?P<dq>[^"<]*)"|'(?P<sq>[^'<]*)')
    )""",
    re.VERBOSE,
)


def markup_tokens(text: str) -> list[tuple[str, ...]]:
    """Lexical token stream with whitespace runs collapsed.

    Raises ValueError on text that cannot be tokenized.
    """
    tokens: list[tuple[str, ...]] = []
    pos, n = 0, len(text)
    while pos < n:
        lt = text.find("<", pos)
        if lt < 0:
            lt = n
        if lt > pos:
            chunk = _WS.sub(" ", text[pos:lt]).strip()
            if chunk:
                tokens.append(("text", chunk))
            pos = lt
            continue
        if text.startswith("<!--", pos):
            end = text.find("-->", pos + 4)
            if end < 0:
                raise ValueError("unterminated comment")
            tokens.append(("comment", _WS.sub(" ", text[pos + 4 : end]).strip()))
            pos = end + 3
            continue
        m = _OPEN_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"malformed markup at offset {pos}")
        tokens.append(("open", (m.group(1) or "") + m.group(2)))
        pos = m.end()
        while True:
            t = _TAG_TOKEN.match(text, pos)
            if not t:
                raise ValueError(f"malformed markup at offset {pos}")
            pos = t.end()
            if t.group("end"):
                tokens.append(("end", t.group("end")))
                break
            if t.group("dq") is not None:
                tokens.append(("attr", t.group("name"), '"', t.group("dq")))
            else:
                tokens.append(("attr", t.group("name"), "'", t.group("sq")))
    return tokens


def equal_modulo_whitespace(a: str, b: str) -> bool:
    try:
        return markup_tokens(a) == markup_tokens(b)
    except ValueError:
        return False
