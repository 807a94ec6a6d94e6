//! Boundary function sources: `gallery:<id>` or `grid:<path>`.

use std::path::PathBuf;

use holext::gallery::GalleryFunction;
use holext::geometry::ComplexPoint2;
use holext::slicing::{BoundaryFunction, InterpolationInfo, SampledGrid};
use holext::Complex;

use crate::error::{CliError, Result};
use crate::grid_file;

#[derive(Debug, Clone)]
pub enum Source {
    Gallery(GalleryFunction),
    Grid { path: PathBuf, grid: SampledGrid },
}

impl Source {
    pub fn parse(spec: &str) -> Result<Self> {
        if let Some(id) = spec.strip_prefix("gallery:") {
            Ok(Source::Gallery(GalleryFunction::parse(id)?))
        } else if let Some(path) = spec.strip_prefix("grid:") {
            let path = PathBuf::from(path);
            let grid = grid_file::read_grid(&path)?;
            Ok(Source::Grid { path, grid })
        } else {
            Err(CliError::usage(format!(
                "function source `{spec}` must start with gallery: or grid:"
            )))
        }
    }

    pub fn interpolation(&self) -> Option<&InterpolationInfo> {
        match self {
            Source::Gallery(_) => None,
            Source::Grid { grid, .. } => Some(grid.info()),
        }
    }

    /// Canonical name used in reports.
    pub fn id(&self) -> String {
        match self {
            Source::Gallery(g) => format!("gallery:{}", g.id()),
            Source::Grid { path, .. } => format!("grid:{}", path.display()),
        }
    }
}

impl BoundaryFunction for Source {
    fn eval(&self, p: ComplexPoint2) -> Complex {
        match self {
            Source::Gallery(g) => g.eval(p),
            Source::Grid { grid, .. } => grid.eval(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_ids_are_canonical() {
        let s = Source::parse("gallery:example11:k=3").unwrap();
        assert_eq!(s.id(), "gallery:example11:k=3");
        assert!(Source::parse("gallery:nope").is_err());
        assert!(matches!(
            Source::parse("example11:k=3"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            Source::parse("grid:/no/such/file.csv"),
            Err(CliError::Read { .. })
        ));
    }
}
