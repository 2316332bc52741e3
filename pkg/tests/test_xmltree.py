from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trscert.xmltree import (
    XmlElement,
    XmlSyntaxError,
    XmlText,
    equal_modulo_whitespace,
    escape_attribute,
    escape_text,
    markup_tokens,
    parse_xml,
    to_string,
)


def test_parse_examples():
    doc = parse_xml(b"<a><b/></a>")
    assert doc.root.name == "a" and [c.name for c in doc.root.elements()] == ["b"]
    assert parse_xml(b"<a>x &amp; y</a>").root.text() == "x & y"
    with pytest.raises(XmlSyntaxError):
        parse_xml(b"<a><b></a>")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("<a>\n  <b></c>\n</a>", 2, 6),
        ("<a>\n<b x='1' x='2'/></a>", 2, 10),
        ("<a>&bogus;</a>", 1, 4),
        ("<a>", 1, 1),
    ],
)
def test_errors_carry_line_and_column(text, line, column):
    with pytest.raises(XmlSyntaxError) as info:
        parse_xml(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "<a/><b/>",
        "<a/>trailing",
        "<!DOCTYPE a><a/>",
        "<a><![CDATA[x]]></a>",
        "<a><?pi x?></a>",
        "<a>]]></a>",
        "<a b=1/>",
        "<a b='1'c='2'/>",
        "<a><!-- x -- y --></a>",
        '<?xml version="1.1"?><a/>',
        '<?xml version="1.0" encoding="latin-1"?><a/>',
        "<a>\x01</a>",
    ],
)
def test_rejected_documents(text):
    with pytest.raises(XmlSyntaxError):
        parse_xml(text)


def test_invalid_utf8_reports_position():
    with pytest.raises(XmlSyntaxError) as info:
        parse_xml(b"<a>\n\xff</a>")
    assert info.value.line == 2


def test_declaration_bom_and_comments():
    doc = parse_xml('\ufeff<?xml version="1.0" encoding="UTF-8"?>\n<!-- c --><a><!-- d -->x</a><!-- e -->')
    assert doc.declaration == (("version", "1.0"), ("encoding", "UTF-8"))
    assert doc.root.text() == "x"


def test_character_references_and_attribute_normalisation():
    doc = parse_xml("<a k='x\ty&#10;z'>&#65;&#x42;&lt;</a>")
    assert doc.root.attribute("k") == "x y\nz"
    assert doc.root.text() == "AB<"


def test_crlf_is_normalised():
    assert parse_xml("<a>x\r\ny</a>").root.text() == "x\ny"


def test_deep_nesting_does_not_recurse():
    depth = 5000
    doc = parse_xml("<a>" * depth + "</a>" * depth)
    node, seen = doc.root, 1
    while node.elements():
        node, seen = node.elements()[0], seen + 1
    assert seen == depth


# -- agreement with ElementTree on generated documents -----------------------------

NAMES = st.sampled_from(["a", "b", "rule", "lhs", "x.y", "n-1", "_z"])
TEXT = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=0x2FF), max_size=8)


def _elements():
    leaf = st.builds(
        lambda n, attrs, text: XmlElement(n, tuple(attrs.items()), (XmlText(text),) if text else ()),
        NAMES,
        st.dictionaries(st.sampled_from(["k", "v", "w"]), TEXT, max_size=2),
        TEXT,
    )
    return st.recursive(
        leaf,
        lambda kids: st.builds(
            lambda n, cs: XmlElement(n, (), tuple(cs)), NAMES, st.lists(kids, min_size=1, max_size=3)
        ),
        max_leaves=10,
    )


def _shape(el: XmlElement):
    text = "".join(c.content for c in el.children if isinstance(c, XmlText))
    return (el.name, dict(el.attributes), text.strip(), [_shape(c) for c in el.elements()])


def _et_shape(el: ET.Element):
    text = (el.text or "") + "".join(c.tail or "" for c in el)
    return (el.tag, dict(el.attrib), text.strip(), [_et_shape(c) for c in el])


@settings(max_examples=200)
@given(_elements(), st.sampled_from(["  ", "\t", None]))
def test_printer_output_parses_identically_with_elementtree(el, indent):
    text = to_string(el, indent)
    ours = parse_xml(text).root
    theirs = ET.fromstring(text)
    assert _shape(ours) == _et_shape(theirs)


@settings(max_examples=200)
@given(_elements())
def test_print_parse_round_trip(el):
    again = parse_xml(to_string(el)).root
    assert _shape(again) == _shape(el)
    assert to_string(again) == to_string(parse_xml(to_string(again)).root)


@given(TEXT)
def test_escaping_round_trips(s):
    doc = parse_xml(f'<a k="{escape_attribute(s)}">{escape_text(s)}</a>')
    assert doc.root.text() == s
    assert doc.root.attribute("k") == s


# -- whitespace-insensitive comparison --------------------------------------------


def test_equal_modulo_whitespace_examples():
    assert equal_modulo_whitespace("<a> <b/> </a>", "<a><b/></a>")
    assert equal_modulo_whitespace("<a>x y</a>", "<a>x  y</a>")
    assert not equal_modulo_whitespace("<a>xy</a>", "<a>x y</a>")


def test_equal_modulo_whitespace_is_lexical():
    assert equal_modulo_whitespace('<a  k="1" >x</a >', '<a k="1">x</a>')
    assert not equal_modulo_whitespace("<a/>", "<a></a>")
    assert not equal_modulo_whitespace("<a>&amp;</a>", "<a>&#38;</a>")
    assert not equal_modulo_whitespace("<a k='1'/>", '<a k="1"/>')
    assert not equal_modulo_whitespace("<a", "<a")


@settings(max_examples=200)
@given(_elements(), st.data())
def test_whitespace_between_tags_is_ignored(el, data):
    text = to_string(el, None)
    cuts = [i for i, ch in enumerate(text) if ch == ">" and i + 1 < len(text) and text[i + 1] == "<"]
    if not cuts:
        return
    i = data.draw(st.sampled_from(cuts)) + 1
    pad = data.draw(st.text(alphabet=" \t\r\n", min_size=1, max_size=4))
    assert equal_modulo_whitespace(text, text[:i] + pad + text[i:])


def test_tokens_of_a_small_document():
    assert markup_tokens('<a k="v">\n x \n</a>') == [
        ("open", "a"),
        ("attr", "k", '"', "v"),
        ("end", ">"),
        ("text", "x"),
        ("open", "/a"),
        ("end", ">"),
    ]
