#!/usr/bin/env python3
"""Regenerates the committed test fixtures.

pages/      bloated HTML pages, each with the layout snapshot a browser
            would report for it (page.html + page.snapshot.json)
snapshots/  small hand-laid-out snapshots for the translator goldens

Layout is computed here with a fixed vertical flow instead of a browser,
so every rect is known exactly. Output is deterministic.

Golden .maml files are not written by this script; regenerate them with
`maml translate` and review the diff by hand.
"""

import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent
VIEWPORT_W = 1200
VIEWPORT_H = 800


class Paint:
    def __init__(self):
        self.n = 0

    def next(self):
        i = self.n
        self.n += 1
        return i


def node(paint, tag, rect, style=None, text="", attrs=None, children=()):
    """Children are built lazily so paint order follows DFS."""
    n = {"tag": tag, "rect": dict(zip("xywh", rect)), "paint_index": paint.next()}
    if attrs:
        n["attrs"] = attrs
    n["style"] = style or {"displayKind": "block"}
    if text:
        n["text"] = text
    kids = [c(paint) for c in children]
    if kids:
        n["children"] = kids
    return n


def lazy(*args, **kw):
    return lambda paint: node(paint, *args, **kw)


def snapshot(root_builder):
    return {
        "schema": 1,
        "viewport": {"width": VIEWPORT_W, "height": VIEWPORT_H},
        "root": root_builder(Paint()),
    }


def dump(path, value):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(value, indent=1, sort_keys=True) + "\n")


# ---------------------------------------------------------------- snapshots

def five_node():
    body = lazy(
        "body", (0, 0, 1200, 600),
        children=[
            lazy("h1", (40, 20, 600, 48), text="Spring Sale",
                 style={"displayKind": "block", "fontSize": "32px", "fontWeight": "700", "color": "rgb(17, 17, 17)"}),
            lazy("p", (40, 84, 600, 44), text="Everything in store is\n  twenty percent off.",
                 style={"displayKind": "block", "color": "rgb(0, 0, 0)", "fontSize": "16px"}),
            lazy("img", (336, 150, 268, 31),
                 attrs={"src": "https://example.com/img/abc.webp", "alt": "Alternate Text"},
                 style={"displayKind": "inline", "objectFit": "fill"}),
            lazy("button", (40, 200, 120, 36), attrs={"id": "buy"}, text="Buy now",
                 style={"displayKind": "inline-block", "backgroundColor": "rgb(0, 102, 204)"}),
            lazy("div", (0, 260, 1200, 200),
                 style={"displayKind": "block", "backgroundColor": "#ff0000", "borderRadius": "8px"}),
        ],
    )
    return snapshot(lazy("html", (0, 0, 1200, 600), children=[body]))


def styled():
    hidden_parent = lazy(
        "div", (0, 500, 1200, 100), style={"displayKind": "none"},
        children=[lazy("p", (0, 500, 100, 20), text="never shown")],
    )
    invisible_wrapper = lazy(
        "div", (0, 0, 0, 0), style={"displayKind": "block", "visibility": "hidden"},
        children=[lazy("span", (10, 420, 80, 18), text="child of hidden wrapper",
                       style={"displayKind": "inline", "visibility": "visible", "fontStyle": "italic"})],
    )
    form = lazy(
        "form", (20, 300, 600, 100),
        children=[
            lazy("input", (20, 300, 240, 28), attrs={"id": "email", "type": "email", "placeholder": "you@example.com"},
                 style={"displayKind": "inline-block", "backgroundColor": "rgb(255, 255, 255)"}),
            lazy("select", (280, 300, 160, 28), attrs={"id": "size"}, style={"displayKind": "inline-block"},
                 children=[lazy("option", (0, 0, 0, 0), text="Small"),
                           lazy("option", (0, 0, 0, 0), text="Large")]),
            lazy("input", (460, 300, 100, 28), attrs={"type": "submit", "value": "Send"},
                 style={"displayKind": "inline-block"}),
            lazy("input", (0, 0, 0, 0), attrs={"type": "hidden", "value": "csrf"},
                 style={"displayKind": "none"}),
        ],
    )
    body = lazy(
        "body", (0, 0, 1200, 640),
        children=[
            lazy("div", (0, 0, 1200, 64), attrs={"id": "banner"},
                 style={"displayKind": "block", "backgroundColor": "rgba(0, 0, 0, 0.5)", "zIndex": "5"},
                 text="Welcome",
                 ),
            lazy("h2", (20, 80, 500.5, 30.25), text="Centered heading",
                 style={"displayKind": "block", "textAlign": "center", "fontFamily": "Georgia, serif",
                        "fontSize": "24.5px", "fontWeight": "bold", "color": "#336699"}),
            lazy("a", (20, 120, 90, 18), attrs={"href": "/more", "id": "more"}, text="Read more",
                 style={"displayKind": "inline", "color": "rgb(0, 0, 238)"}),
            lazy("img", (600, 80, 300, 200), attrs={"src": "/img/small.jpg", "currentSrc": "/img/large.jpg", "id": "more"},
                 style={"displayKind": "block", "objectFit": "cover", "zIndex": "auto"}),
            lazy("video", (20, 150, 320, 140), attrs={"id": "clip"}, style={"displayKind": "block"},
                 children=[lazy("source", (0, 0, 0, 0), attrs={"src": "/media/clip.mp4"})]),
            form,
            invisible_wrapper,
            hidden_parent,
            lazy("p", (-40, 450, 30, 18), text="off-canvas", style={"displayKind": "block"}),
            lazy("img", (700, 450, 64, 64), attrs={"alt": "no source"}, style={"displayKind": "block"}),
        ],
    )
    return snapshot(lazy("html", (0, 0, 1200, 640), children=[body]))


def empty_body():
    return snapshot(lazy("html", (0, 0, 1200, 800), children=[lazy("body", (0, 0, 1200, 800))]))


# -------------------------------------------------------------------- pages

def framework_css(rng, kb):
    """Utility-class soup in the style of a bundled CSS framework."""
    props = ["margin", "padding", "margin-top", "margin-left", "padding-bottom", "gap", "width", "max-width"]
    colors = ["primary", "secondary", "success", "danger", "warning", "info", "light", "dark"]
    out = [":root{--fw-font:system-ui,-apple-system,'Segoe UI',Roboto,'Helvetica Neue',Arial,sans-serif}"]
    i = 0
    while sum(map(len, out)) < kb * 1024:
        p = props[i % len(props)]
        c = colors[i % len(colors)]
        bp = ["", "sm-", "md-", "lg-", "xl-"][i % 5]
        out.append(f".{p[:2]}-{bp}{i % 13}{{{p}:{(i % 13) * 0.25}rem!important}}")
        out.append(f".btn-{c}.{bp}v{i}:hover{{color:#{rng.randrange(1 << 24):06x};"
                   f"background-color:#{rng.randrange(1 << 24):06x};border-color:#{rng.randrange(1 << 24):06x}}}")
        if i % 7 == 0:
            out.append(f"@media (min-width:{576 + i % 4 * 192}px){{.col-{bp}{i % 12 + 1}"
                       f"{{flex:0 0 auto;width:{(i % 12 + 1) / 12 * 100:.6f}%}}}}")
        i += 1
    return "\n".join(out)


def unused_script(rng, kb):
    names = ["track", "consent", "carouselPolyfill", "abTest", "chatWidget", "heatmap"]
    out = ["(function(w,d){'use strict';var q=w.__q=w.__q||[];"]
    i = 0
    while sum(map(len, out)) < kb * 1024:
        n = names[i % len(names)]
        out.append(f"function {n}{i}(e){{var t=Date.now(),k='{rng.randrange(1 << 32):08x}';"
                   f"q.push({{e:e,t:t,k:k,p:d.location.pathname}});return q.length>{i % 50}}}")
        i += 1
    out.append("})(window,document);")
    return "\n".join(out)


PARAGRAPHS = [
    "Our team ships hand-made goods from a small workshop.",
    "Free returns within thirty days of delivery.",
    "Sign up to hear about new collections first.",
    "Every order is packed in recycled materials.",
    "Questions? Our support desk answers within a day.",
    "Gift cards are available in any amount.",
]


def page(rng, index):
    """Returns (html, snapshot) for one bloated landing page."""
    css_kb = rng.choice([6, 12, 20, 28, 40, 56])
    js_kb = rng.choice([4, 8, 16, 24])
    wrappers = rng.randint(3, 8)
    n_cards = rng.randint(2, 6)
    title = f"Shop {index}"

    # Content blocks in reading order: (tag, attrs, text, height, style)
    blocks = [("h1", {}, title, 48, {"fontSize": "32px", "fontWeight": "700"})]
    for c in range(n_cards):
        blocks.append(("img", {"src": f"https://cdn.example.com/p{index}/card{c}.webp", "alt": f"Product {c}"},
                       "", 180, {"objectFit": "cover"}))
        blocks.append(("p", {}, rng.choice(PARAGRAPHS), 22, {"color": "rgb(68, 68, 68)"}))
        blocks.append(("button", {"id": f"buy{c}"}, "Add to cart", 36, {"backgroundColor": "rgb(13, 110, 253)",
                                                                        "color": "rgb(255, 255, 255)"}))
    blocks.append(("div", {"class": "divider"}, "", 4, {"backgroundColor": "rgb(222, 226, 230)"}))
    blocks.append(("input", {"id": "newsletter", "type": "email", "placeholder": "Email address"}, "", 32, {}))
    blocks.append(("p", {"class": "footer"}, f"Copyright {2020 + index % 5} {title}", 20, {"fontSize": "12px"}))

    y = 20
    placed = []
    for tag, attrs, text, h, style in blocks:
        placed.append((tag, attrs, text, (40, y, 720, h), style))
        y += h + 12
    height = y + 20

    # HTML: content nested inside wrapper divs, heavy head.
    classes = " ".join(f"u-{rng.randrange(999)}" for _ in range(4))
    lines = [
        "<!DOCTYPE html>",
        "<html lang=\"en\"><head><meta charset=\"utf-8\">",
        f"<title>{title}</title>",
        "<link rel=\"stylesheet\" href=\"https://cdn.example.com/framework/5.3/framework.min.css\">",
        "<link rel=\"stylesheet\" href=\"https://fonts.example.com/css2?family=Inter\">",
        "<script src=\"https://cdn.example.com/jquery/3.7/jquery.min.js\"></script>",
        "<script src=\"https://analytics.example.com/tag.js\"></script>",
        f"<style>\n{framework_css(rng, css_kb)}\n</style>",
        f"<script>\n{unused_script(rng, js_kb)}\n</script>",
        "</head><body>",
    ]
    for wdepth in range(wrappers):
        lines.append("  " * wdepth + f"<div class=\"container-fluid d-flex {classes}\"><div class=\"row g-0\">")
    indent = "  " * wrappers
    for tag, attrs, text, _, _ in placed:
        attr_text = "".join(f" {k}=\"{v}\"" for k, v in attrs.items())
        wrap_open = f"{indent}<div class=\"col-12 col-md-8 {classes}\" data-track=\"block\">"
        if tag in ("img", "input"):
            lines.append(f"{wrap_open}<{tag}{attr_text} class=\"img-fluid shadow-sm\"></div>")
        else:
            lines.append(f"{wrap_open}<{tag}{attr_text} class=\"text-body fw-normal\" "
                         f"onclick=\"track{index}(this)\">{text}</{tag}></div>")
    for wdepth in reversed(range(wrappers)):
        lines.append("  " * wdepth + "</div></div>")
    lines.append("</body></html>")
    html = "\n".join(lines) + "\n"

    # Snapshot: same tree, each wrapper is two unstyled divs, each block has
    # its own column div.
    def content(p):
        tag, attrs, text, rect, style = p
        return lambda paint: node(
            paint, "div", rect, style={"displayKind": "block"},
            children=[lazy(tag, rect, attrs=attrs, text=text, style={"displayKind": "block", **style})],
        )

    def wrap(depth):
        if depth == wrappers:
            return [content(p) for p in placed]
        rect = (0, 0, VIEWPORT_W, height)
        return [lazy("div", rect, children=[lazy("div", rect, children=wrap(depth + 1))])]

    head = lazy("head", (0, 0, 0, 0), style={"displayKind": "none"})
    body = lazy("body", (0, 0, VIEWPORT_W, height), children=wrap(0))
    snap = snapshot(lazy("html", (0, 0, VIEWPORT_W, height), children=[head, body]))
    return html, snap


def main():
    dump(ROOT / "snapshots" / "five-node.json", five_node())
    dump(ROOT / "snapshots" / "styled.json", styled())
    dump(ROOT / "snapshots" / "empty-body.json", empty_body())
    schema2 = empty_body()
    schema2["schema"] = 2
    dump(ROOT / "snapshots" / "schema-2.json", schema2)

    rng = random.Random(20240611)
    for i in range(12):
        html, snap = page(rng, i)
        (ROOT / "pages").mkdir(exist_ok=True)
        (ROOT / "pages" / f"page{i:02}.html").write_text(html)
        dump(ROOT / "pages" / f"page{i:02}.snapshot.json", snap)


if __name__ == "__main__":
    main()
