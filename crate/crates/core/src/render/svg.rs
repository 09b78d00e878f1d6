//! Minimal SVG 1.1 writer: enough for rects, circles, lines, polylines and
//! text, with attribute escaping and fixed-precision coordinates.

use std::fmt::Write;

pub const VERSION_COMMENT: &str = concat!("<!-- divisors ", env!("CARGO_PKG_VERSION"), " -->");

pub(crate) fn num(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

pub(crate) struct SvgWriter {
    out: String,
    depth: usize,
}

pub(crate) type Attrs<'a> = &'a [(&'a str, String)];

impl SvgWriter {
    pub fn new(width: f64, height: f64, title: &str) -> Self {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        out.push_str(VERSION_COMMENT);
        out.push('\n');
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = num(width),
            h = num(height)
        );
        let _ = writeln!(out, "  <title>{}</title>", escape(title));
        let _ = writeln!(
            out,
            "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
            num(width),
            num(height)
        );
        Self { out, depth: 1 }
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn attrs(&mut self, attrs: Attrs) {
        for (key, value) in attrs {
            let _ = write!(self.out, " {key}=\"{}\"", escape(value));
        }
    }

    pub fn open(&mut self, name: &str, attrs: Attrs) {
        self.indent();
        let _ = write!(self.out, "<{name}");
        self.attrs(attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    pub fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        let _ = writeln!(self.out, "</{name}>");
    }

    pub fn empty(&mut self, name: &str, attrs: Attrs) {
        self.indent();
        let _ = write!(self.out, "<{name}");
        self.attrs(attrs);
        self.out.push_str("/>\n");
    }

    pub fn text(&mut self, x: f64, y: f64, content: &str, attrs: Attrs) {
        self.indent();
        let _ = write!(self.out, "<text x=\"{}\" y=\"{}\"", num(x), num(y));
        self.attrs(attrs);
        let _ = writeln!(self.out, ">{}</text>", escape(content));
    }

    pub fn finish(mut self) -> String {
        while self.depth > 1 {
            self.close("g");
        }
        self.out.push_str("</svg>\n");
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_well_formed_document() {
        let mut w = SvgWriter::new(10.0, 20.0, "a < b & \"c\"");
        w.open("g", &[("class", "panel".into())]);
        w.empty(
            "circle",
            &[("cx", num(1.0)), ("cy", num(2.5)), ("r", num(0.333))],
        );
        w.text(0.0, 5.0, "n<k", &[]);
        let doc = w.finish();
        assert!(doc.contains("<title>a &lt; b &amp; &quot;c&quot;</title>"));
        assert!(doc.contains("r=\"0.33\""));
        let parsed = roxmltree::Document::parse(&doc).unwrap();
        assert_eq!(parsed.root_element().tag_name().name(), "svg");
    }
}
