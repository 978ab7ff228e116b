use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;
use waveset_core::geometry::BBox;
use waveset_core::Region;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// Fill colour of a region; `None` colours each piece by its global index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Style {
    pub fill: Option<String>,
}

impl Style {
    pub fn indexed(i: usize) -> Self {
        Style {
            fill: Some(PALETTE[i % PALETTE.len()].into()),
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("nothing to render")]
    Empty,
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// SVG text with one `<polygon>` per convex piece. The y axis points up;
/// the viewBox is the joint bounding box padded by 5% on each side.
pub fn svg_string(items: &[(Region, Style)]) -> Result<String, RenderError> {
    let bb = items.iter().fold(BBox::EMPTY, |b, (r, _)| b.union(r.bbox()));
    if items.iter().all(|(r, _)| r.is_empty()) {
        return Err(RenderError::Empty);
    }
    let (w, h) = (bb.width(), bb.height());
    let (px, py) = (0.05 * w, 0.05 * h);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        bb.min.x - px,
        -bb.max.y - py,
        w + 2.0 * px,
        h + 2.0 * py
    )
    .unwrap();
    let stroke = 0.002 * w.max(h);
    let mut index = 0;
    for (region, style) in items {
        for piece in region.pieces() {
            let fill = style.fill.clone().unwrap_or_else(|| PALETTE[index % PALETTE.len()].into());
            let pts: Vec<String> = piece.vertices().iter().map(|p| format!("{},{}", p.x, -p.y)).collect();
            writeln!(
                s,
                r#"  <polygon points="{}" fill="{fill}" stroke="black" stroke-width="{stroke}"/>"#,
                pts.join(" ")
            )
            .unwrap();
            index += 1;
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_svg(items: &[(Region, Style)], path: &Path) -> Result<(), RenderError> {
    let text = svg_string(items)?;
    let io = |source| RenderError::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}
