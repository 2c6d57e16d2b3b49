"""Regenerate the recorded-response cache, ground truth and PDF under tests/fixtures/.

The pages are synthetic reconstructions in Google Scholar's markup. Profiles
for R. Heat, S. Sum and C. Fischione carry the published ids and metrics;
everything else is made up so that each pipeline path (first-hit-wins,
wrong id, no homepage, e-mail as image, ...) is exercised.

    python scripts/build_fixtures.py
"""
from __future__ import annotations

import html
import json
import re
import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from refrank.fetch import DiskCache, FetchRecord  # noqa: E402
from refrank.ingest import SourceDocument, extract_text  # noqa: E402
from refrank.refparse import author_mentions, collapse_ws, header_authors, isolate_reference_section, parse_citations  # noqa: E402
from refrank.scholar import ScholarConfig, build_profile_url, build_search_url, is_valid_scholar_id  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
FETCHED_AT = "2026-10-01T12:00:00Z"
DATASETS = ("dataset1", "dataset2", "dataset3")

# id: (full name, affiliation html, h, i10, citations, verified domain, homepage, coauthors)
PROFILES = {
    "W_ZpqUwAAAAJ": ("James Robert Heath", "California Institute of Technology", 99, 220, 54428, "caltech.edu", None, ()),
    "rrfl7UsAAAAJ": ("Shao-Cong Sun", "Unknown Affiliation", 63, 128, 13624, None, None, ()),
    "RWGj7esAAAAJ": ("Carlo Fischione",
                     'Associate Professor, <a href="/citations?view_op=view_org&amp;org=1" class="gsc_prf_ila">KTH Royal Institute of Technology</a>',
                     23, 48, 1923, "kth.se", None, ()),
    "kCrqT9sAAAAJ": ("Guang-Bin Huang", "Nanyang Technological University", 70, 180, 90000, "ntu.edu.sg",
                     "http://www.extreme-learning-machines.org", ()),
    "s-4bPXQAAAAJ": ("Amaury Lendasse", "University of Iowa", 45, 160, 9000, "uiowa.edu",
                     "http://www.engineering.uiowa.edu/mie/faculty-staff/amaury-lendasse", ("Yoan Miche", "Anton Akusok")),
    "Vh3ezWkAAAAJ": ("Mark van Heeswijk", "Aalto University", 10, 10, 1200, "aalto.fi",
                     "http://users.ics.tkk.fi/heeswijk", ()),
    "mYq0ChEAAAAJ": ("Yoan Miche", "Nokia Bell Labs", 9, 9, 700, "nokia-bell-labs.com", None, ()),
    "aKu5okQAAAAJ": ("Anton Akusok", "Arcada University of Applied Sciences", 8, 7, 600, "arcada.fi", None,
                     ("Amaury Lendasse", "Yoan Miche", "Kaj-Mikael Bjork", "Mark van Heeswijk")),
    "gKb8LdQAAAAJ": ("Ken Goldberg", "Professor, UC Berkeley", 85, 400, 32000, "berkeley.edu",
                     "http://goldberg.berkeley.edu/", ("Pieter Abbeel", "Ben Kehoe")),
    "bEz4tZ2AAAAJ": ("Michael Beetz", "Technische Universit&auml;t M&uuml;nchen", 60, 250, 16000, "in.tum.de",
                     "http://ias.cs.tum.edu/people/beetz", ("Moritz Tenorth",)),
    "dAr_9aeAAAAJ": ("Raffaello D&#39;Andrea", "ETH Zurich", 55, 150, 15000, "ethz.ch", "http://www.raffaello.name/", ()),
    "tNr7tHmAAAAJ": ("Moritz Tenorth", "University of Bremen", 25, 45, 4000, "uni-bremen.de", None, ("Michael Beetz",)),
    "kH0eBnsAAAAJ": ("Ben Kehoe", "UC Berkeley", 8, 8, 900, None, None, ("Ken Goldberg",)),
    "aBbL3eyAAAAJ": ("Pieter Abbeel", "UC Berkeley", 110, 280, 90000, "eecs.berkeley.edu", None, ("Ken Goldberg",)),
    "hCw4nGfAAAAJ": ("Haichao Wang", "Feinstein Institute for Medical Research", 70, 220, 25000, "nshs.edu",
                     "http://www.feinsteininstitute.org/Feinstein/About+Haichao+Wang", ()),
    "hNw4nGtAAAAJ": ("Hongning Wang", "University of Virginia", 30, 60, 5000, "virginia.edu", None, ()),
    "wKliu7NAAAAJ": ("Wing Kam Liu", "Northwestern University", 40, 120, 9000, "northwestern.edu",
                     "http://www.tam.northwestern.edu/wkl/", ()),
    "kGliu2CAAAAJ": ("Kang Liu", "Institute of Automation, Chinese Academy of Sciences", 30, 70, 6000, "nlpr.ia.ac.cn",
                     None, ("Liheng Xu", "Jun Zhao")),
    "zLwr0nGAAAAJ": ("Zhen Liu", "Unknown affiliation", 25, 45, 4000, "tenorth.de", "http://www.tenorth.de/", ()),
    "zYliu0TAAAAJ": ("Zhiyuan Liu", "Tsinghua University", 35, 80, 8000, "tsinghua.edu.cn", None, ()),
    "bOliu2AAAAAJ": ("Bo Liu", "Unknown affiliation", 15, 20, 1500, None, None, ()),
    "bNgliu1AAAAJ": ("Bing Liu", "University of Illinois at Chicago", 85, 250, 90000, "uic.edu", None, ()),
}

# ordered search hits; the first one is what the pipeline picks
SEARCH = {
    "R. Heat": ["W_ZpqUwAAAAJ"],
    "S. Sum": ["rrfl7UsAAAAJ"],
    "C. Fischione": ["RWGj7esAAAAJ"],
    "G. B. Huang": ["kCrqT9sAAAAJ"],
    "A. Lendasse": ["s-4bPXQAAAAJ"],
    "M. van Heeswijk": ["Vh3ezWkAAAAJ"],
    "Y. Miche": ["mYq0ChEAAAAJ"],
    "A. Akusok": ["aKu5okQAAAAJ"],
    "K. Goldberg": ["gKb8LdQAAAAJ"],
    "M. Beetz": ["bEz4tZ2AAAAJ"],
    "R. D'Andrea": ["dAr_9aeAAAAJ"],
    "M. Tenorth": ["tNr7tHmAAAAJ"],
    "B. Kehoe": ["kH0eBnsAAAAJ"],
    "P. Abbeel": ["aBbL3eyAAAAJ"],
    "H. Wang": ["hCw4nGfAAAAJ", "hNw4nGtAAAAJ"],
    "K. Liu": ["wKliu7NAAAAJ", "kGliu2CAAAAJ"],
    "Z. Liu": ["zLwr0nGAAAAJ", "zYliu0TAAAAJ"],
    "B. Liu": ["bOliu2AAAAAJ", "bNgliu1AAAAJ"],
}

# the person each citation actually refers to (None: no public profile)
TRUE_ID = dict((name, hits[0]) for name, hits in SEARCH.items())
TRUE_ID.update({"H. Wang": "hNw4nGtAAAAJ", "K. Liu": "kGliu2CAAAAJ", "Z. Liu": "zYliu0TAAAAJ", "B. Liu": "bNgliu1AAAAJ"})
TRUE_EMAIL = {"A. Lendasse": "lendasse@uiowa.edu", "K. Goldberg": "goldberg@berkeley.edu"}

PAGE = """<!doctype html><html><head><title>{title}</title></head><body>
<div id="gs_hdr"><a href="/citations?hl=en&amp;user=me">My profile</a></div>
{body}
</body></html>
"""

HOMEPAGES = {
    "http://www.extreme-learning-machines.org": (
        "<h1>Extreme Learning Machines</h1><p>Contact: <img src=\"/img/contact-email.png\" alt=\"e-mail address\"></p>"
    ),
    "http://www.engineering.uiowa.edu/mie/faculty-staff/amaury-lendasse": (
        "<h1>Amaury Lendasse</h1><p>Department office: mie-office@engineering.uiowa.edu</p>"
        "<p>Email: lendasse@uiowa.edu<br>Phone: +1 319 000 0000</p>"
    ),
    "http://users.ics.tkk.fi/heeswijk": "<h1>Mark van Heeswijk</h1><p>Publications and software.</p>",
    "http://goldberg.berkeley.edu/": (
        "<h1>Ken Goldberg</h1><p>Lab: alpha-lab@berkeley.edu</p>"
        "<p>Contact goldberg@berkeley.edu (or goldberg@berkeley.edu for press).</p>"
    ),
    "http://ias.cs.tum.edu/people/beetz": (
        "<h1>Prof. Michael Beetz</h1><p>E-Mail: <img src=\"mail_beetz.gif\" alt=\"\"></p>"
    ),
    "http://www.raffaello.name/": "<h1>Raffaello D'Andrea</h1><p>Use the contact form.</p>",
    "http://www.feinsteininstitute.org/Feinstein/About+Haichao+Wang": (
        "<h1>About Haichao Wang</h1><p>Collaborator contact: xwang8@sjtu.edu.cn.</p>"
    ),
    "http://www.tam.northwestern.edu/wkl/": "<h1>Wing Kam Liu</h1><p>Computational mechanics.</p>",
    "http://www.tenorth.de/": "<h1>tenorth.de</h1><p>Personal page.</p>",
}


def search_page(name: str, ids: list[str]) -> str:
    if not ids:
        body = f'<div class="gs_med">Didn\'t match any user profiles for <b>{html.escape(name)}</b></div>'
    else:
        items = []
        for sid in ids:
            full = PROFILES[sid][0]
            items.append(
                f'<div class="gsc_1usr"><h3 class="gs_ai_name">'
                f'<a href="/citations?hl=en&amp;user={sid}">{full}</a></h3>'
                f'<div class="gs_ai_aff">{re.sub("<[^>]+>", "", PROFILES[sid][1])}</div></div>'
            )
        body = "\n".join(items)
    return PAGE.format(title=f"{html.escape(name)} - Google Scholar", body=body)


def profile_page(sid: str) -> str:
    full, aff, h, i10, cit, domain, homepage, coauthors = PROFILES[sid]
    verified = []
    if domain:
        verified.append(f"Verified email at {domain}")
    if homepage:
        verified.append(f'<a href="{html.escape(homepage)}" rel="nofollow" class="gsc_prf_ila">Homepage</a>')
    stats = "".join(
        f'<tr><td class="gsc_rsb_sc1"><a href="#" class="gsc_rsb_f">{label}</a></td>'
        f'<td class="gsc_rsb_std">{value}</td><td class="gsc_rsb_std">{value // 3}</td></tr>'
        for label, value in (("Citations", cit), ("h-index", h), ("i10-index", i10))
    )
    co = "".join(
        f'<li><span class="gsc_rsb_a_desc"><a href="#">{c}</a></span></li>'
        for c in coauthors
    )
    body = (
        f'<link rel="canonical" href="https://scholar.google.com/citations?user={sid}&amp;hl=en">\n'
        f'<div id="gsc_prf_in">{full}</div>\n'
        f'<div class="gsc_prf_il">{aff}</div>\n'
        f'<div class="gsc_prf_il" id="gsc_prf_ivh">{" - ".join(verified) or "No verified email"}</div>\n'
        f'<table id="gsc_rsb_st"><tbody>{stats}</tbody></table>\n'
        f'<ul class="gsc_rsb_a">{co}</ul>'
    )
    return PAGE.format(title=f"{full} - Google Scholar", body=body)


def record(cache: DiskCache, url: str, text: str, status: int = 200) -> None:
    cache.put(FetchRecord(url, text.encode("utf-8"), status, FETCHED_AT))


def oracle_frequencies(text: str, names: list[str]) -> dict[str, int]:
    """Count each name in the whitespace-collapsed reference section by regex scan."""
    refs = collapse_ws(isolate_reference_section(extract_text(SourceDocument(text.encode()))).raw)
    return {n: len(re.findall(rf"(?<![\w.]){re.escape(n)}(?![\w'’-])", refs)) for n in names}


def truth_entry(name: str, frequency: int) -> dict:
    sid = TRUE_ID.get(name)
    p = PROFILES.get(sid) if sid else None
    return {
        "name": name,
        "frequency": frequency,
        "id": sid,
        "email_domain": p[5] if p else None,
        "professional_info": collapse_ws(html.unescape(re.sub("<[^>]+>", " ", p[1]))) if p else None,
        "h_index": p[2] if p else None,
        "i10_index": p[3] if p else None,
        "citations": p[4] if p else None,
        "homepage": p[6] if p else None,
        "email": TRUE_EMAIL.get(name),
    }


def main() -> None:
    for sid in PROFILES:
        assert is_valid_scholar_id(sid), sid
    cache_dir = FIXTURES / "cache"
    if cache_dir.exists():
        shutil.rmtree(cache_dir)
    cache = DiskCache(cache_dir)
    config = ScholarConfig()

    names: set[str] = set(SEARCH)
    truth = {"datasets": {}}
    for ds in DATASETS:
        text = (FIXTURES / f"{ds}.txt").read_text(encoding="utf-8")
        norm = extract_text(SourceDocument(text.encode()))
        cited = sorted({m.canonical_name for m in author_mentions(parse_citations(norm))})
        names.update(cited)
        names.update(header_authors(norm))
        freqs = oracle_frequencies(text, cited)
        truth["datasets"][ds] = {
            "frequencies": freqs,
            "candidates": [truth_entry(n, freqs[n]) for n in cited],
        }

    for name in sorted(names):
        record(cache, build_search_url(name, config), search_page(name, SEARCH.get(name, [])))
    for sid in PROFILES:
        record(cache, build_profile_url(sid, config), profile_page(sid))
    for url, body in HOMEPAGES.items():
        record(cache, url, PAGE.format(title="Homepage", body=body))

    (FIXTURES / "truth.json").write_text(json.dumps(truth, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    build_pdf(FIXTURES / "dataset1.txt", FIXTURES / "dataset1.pdf")
    print(f"{len(cache.urls())} cache entries, truth for {len(DATASETS)} data sets")


def build_pdf(src: Path, dest: Path) -> None:
    from reportlab.lib.pagesizes import letter
    from reportlab.pdfgen import canvas

    c = canvas.Canvas(str(dest), pagesize=letter, invariant=1)
    c.setFont("Helvetica", 9)
    y = 750
    for line in src.read_text(encoding="utf-8").splitlines():
        if y < 50:
            c.showPage()
            c.setFont("Helvetica", 9)
            y = 750
        c.drawString(40, y, line)
        y -= 12
    c.save()


if __name__ == "__main__":
    main()
