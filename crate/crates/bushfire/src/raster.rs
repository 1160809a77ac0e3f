use std::fs;
use std::path::Path;

use crate::BushfireError;

/// Four co-registered bands over the same `width × height` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterPair {
    pub width: usize,
    pub height: usize,
    pub pre_nir: Vec<u64>,
    pub pre_swir: Vec<u64>,
    pub post_nir: Vec<u64>,
    pub post_swir: Vec<u64>,
}

impl RasterPair {
    pub fn new(
        width: usize,
        height: usize,
        pre_nir: Vec<u64>,
        pre_swir: Vec<u64>,
        post_nir: Vec<u64>,
        post_swir: Vec<u64>,
    ) -> Result<Self, BushfireError> {
        let n = width * height;
        if n == 0 {
            return Err(BushfireError::Raster("empty raster".into()));
        }
        for (name, band) in [("pre_nir", &pre_nir), ("pre_swir", &pre_swir), ("post_nir", &post_nir), ("post_swir", &post_swir)] {
            if band.len() != n {
                return Err(BushfireError::Raster(format!("{name} has {} cells, expected {n}", band.len())));
            }
        }
        for i in 0..n {
            if pre_nir[i] + pre_swir[i] == 0 || post_nir[i] + post_swir[i] == 0 {
                return Err(BushfireError::ZeroDenominator { pixel: i });
            }
        }
        Ok(Self { width, height, pre_nir, pre_swir, post_nir, post_swir })
    }

    /// A `1 × n` strip from per-pixel `(r⁻, s⁻, r⁺, s⁺)` tuples.
    pub fn from_pixels(pixels: &[(u64, u64, u64, u64)]) -> Result<Self, BushfireError> {
        Self::new(
            pixels.len(),
            1,
            pixels.iter().map(|p| p.0).collect(),
            pixels.iter().map(|p| p.1).collect(),
            pixels.iter().map(|p| p.2).collect(),
            pixels.iter().map(|p| p.3).collect(),
        )
    }

    pub fn pixels(&self) -> usize {
        self.pre_nir.len()
    }

    /// Data-slot order: `r⁻ ‖ s⁻ ‖ r⁺ ‖ s⁺`.
    pub fn data_values(&self) -> Vec<u64> {
        [&self.pre_nir, &self.pre_swir, &self.post_nir, &self.post_swir].into_iter().flatten().copied().collect()
    }
}

/// One band: header `width,height`, then one integer per line, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub width: usize,
    pub height: usize,
    pub values: Vec<u64>,
}

pub fn parse_band(text: &str) -> Result<Band, BushfireError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| BushfireError::Raster("missing header".into()))?;
    let dims: Vec<&str> = header.split(',').map(str::trim).collect();
    let [w, h] = dims[..] else {
        return Err(BushfireError::Raster(format!("bad header {header:?}")));
    };
    let parse_dim = |s: &str| s.parse::<usize>().map_err(|_| BushfireError::Raster(format!("bad dimension {s:?}")));
    let (width, height) = (parse_dim(w)?, parse_dim(h)?);
    let mut values = Vec::new();
    for line in lines {
        let v: i64 = line.parse().map_err(|_| BushfireError::Raster(format!("bad cell {line:?}")))?;
        if v < 0 {
            return Err(BushfireError::NegativeValue(v));
        }
        values.push(v as u64);
    }
    if values.len() != width * height {
        return Err(BushfireError::Raster(format!(
            "{} cells for a {width}x{height} raster",
            values.len()
        )));
    }
    Ok(Band { width, height, values })
}

pub fn format_band(width: usize, height: usize, values: &[u64]) -> String {
    let mut out = format!("{width},{height}\n");
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

pub fn load_band(path: &Path) -> Result<Band, BushfireError> {
    let text = fs::read_to_string(path).map_err(|e| BushfireError::Io(format!("{}: {e}", path.display())))?;
    parse_band(&text)
}

/// Load the four bands `pre_nir.csv`, `pre_swir.csv`, `post_nir.csv`,
/// `post_swir.csv` from `dir`.
///
/// Imagery products are converted offline: for Landsat-8 surface
/// reflectance (as served by DEA) NIR is band 5 and SWIR is band 7, each
/// exported as one CSV with nodata cells removed by the caller.
pub fn load_raster(dir: &Path) -> Result<RasterPair, BushfireError> {
    let bands: Vec<Band> = ["pre_nir", "pre_swir", "post_nir", "post_swir"]
        .iter()
        .map(|name| load_band(&dir.join(format!("{name}.csv"))))
        .collect::<Result<_, _>>()?;
    let (w, h) = (bands[0].width, bands[0].height);
    if bands.iter().any(|b| (b.width, b.height) != (w, h)) {
        return Err(BushfireError::Raster("bands disagree on dimensions".into()));
    }
    let mut it = bands.into_iter().map(|b| b.values);
    RasterPair::new(w, h, it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
}

pub fn write_raster(dir: &Path, r: &RasterPair) -> Result<(), BushfireError> {
    fs::create_dir_all(dir).map_err(|e| BushfireError::Io(e.to_string()))?;
    for (name, band) in [("pre_nir", &r.pre_nir), ("pre_swir", &r.pre_swir), ("post_nir", &r.post_nir), ("post_swir", &r.post_swir)] {
        let path = dir.join(format!("{name}.csv"));
        fs::write(&path, format_band(r.width, r.height, band)).map_err(|e| BushfireError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
