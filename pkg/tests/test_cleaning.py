"""Boilerplate detection heuristics and markup stripping."""

import pytest

from termforge.cleaning import CleaningConfig, clean_document
from termforge.errors import DecodingError

PROSE = (
    "The cadastre of real estates is a public register that contains "
    "information about land parcels and buildings in the country."
)


def labels(doc):
    return [(p.text, p.quality) for p in doc.paragraphs]


def test_short_paragraph_is_boilerplate():
    doc, report = clean_document("tiny", doc_id="d", language="en")
    assert doc.paragraphs[0].quality == "boilerplate"
    assert report.drop_reasons == {"too_short": 1}


def test_prose_paragraph_is_good():
    doc, report = clean_document(PROSE, doc_id="d", language="en")
    assert doc.paragraphs[0].quality == "good"
    assert report.paragraphs_kept == 1
    assert report.paragraphs_dropped == 0


def test_navigation_list_dropped_by_link_density():
    # 54 of 59 visible characters live inside anchors: density 0.915.
    html = (
        "<html><body>"
        "<p><a href='/'>Home page</a> | <a href='/map'>Cadastral maps</a> | "
        "<a href='/contacts'>Contact the office</a></p>"
        f"<p>{PROSE}</p>"
        "</body></html>"
    )
    doc, report = clean_document(html, doc_id="d", language="en")
    assert [p.quality for p in doc.paragraphs] == ["boilerplate", "good"]
    assert report.drop_reasons["link_density"] == 1


def test_low_stopword_ratio_dropped():
    keywords = "cadastre geodesy theodolite parcel surveying mapping levelling altimetry"
    doc, report = clean_document(keywords + " " + keywords, doc_id="d", language="en")
    assert doc.paragraphs[0].quality == "boilerplate"
    assert report.drop_reasons == {"stop_word_ratio": 1}


def test_stopword_rule_skipped_without_stop_list():
    keywords = "cadastre geodesy theodolite parcel surveying mapping levelling altimetry"
    doc, _ = clean_document(
        keywords + " " + keywords, doc_id="d", language="xx", stop_words=frozenset()
    )
    assert doc.paragraphs[0].quality == "good"


def test_script_and_style_stripped():
    html = (
        "<html><head><style>p { color: red }</style>"
        "<script>var x = 1;</script></head>"
        f"<body><p>{PROSE}</p></body></html>"
    )
    doc, _ = clean_document(html, doc_id="d", language="en")
    assert labels(doc) == [(PROSE, "good")]


def test_plain_text_blank_line_paragraphs():
    raw = f"{PROSE}\n\n{PROSE} Second block."
    doc, report = clean_document(raw, doc_id="d", language="en")
    assert len(doc.paragraphs) == 2
    assert report.paragraphs_kept == 2


def test_entities_decoded():
    html = f"<p>{PROSE} Maps &amp; plans.</p>"
    doc, _ = clean_document(html, doc_id="d", language="en")
    assert "Maps & plans." in doc.paragraphs[0].text


def test_undecodable_input_reports_byte_offset():
    raw = PROSE.encode("utf-8") + b"\xff\xfe" + b"tail"
    with pytest.raises(DecodingError) as err:
        clean_document(raw, doc_id="d", language="en")
    assert err.value.byte_offset == len(PROSE.encode("utf-8"))


def test_bytes_input_decoded():
    doc, _ = clean_document(PROSE.encode("utf-8"), doc_id="d", language="en")
    assert doc.paragraphs[0].text == PROSE


def test_thresholds_configurable():
    config = CleaningConfig(min_chars=2)
    doc, _ = clean_document("tiny but enough stop words for it", doc_id="d",
                            language="en", config=config)
    assert doc.paragraphs[0].quality == "good"


def test_kept_plus_dropped_equals_total():
    html = "<p>abc</p><p>" + PROSE + "</p><p><a href='x'>all link text here</a></p>"
    _, report = clean_document(html, doc_id="d", language="en")
    assert report.paragraphs_kept + report.paragraphs_dropped == 3
