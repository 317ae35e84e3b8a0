use crate::error::{Error, Result};
use crate::masks::{
    case1_mask, case2a_mask, case4a_masks, d4_taps, d4_tensor_mask, derive_wavelet_bank, haar_mask,
    tensor_bank_1d, Case1Params, Case2aParams, Case2aPart, Sign, WaveletBank,
};

use super::maskfile::MaskFile;

/// Everything needed to regenerate a named mask.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MaskRecipe {
    Case1 { beta: f64, gamma: f64 },
    Case2a { part: Case2aPart, sign: Sign },
    /// 1-based position in the list of isolated solutions.
    Case4a { index: usize },
    Haar,
    D4,
}

pub fn generate(recipe: MaskRecipe) -> Result<MaskFile> {
    let sign_value = |s: Sign| if s == Sign::Plus { 1.0 } else { -1.0 };
    Ok(match recipe {
        MaskRecipe::Case1 { beta, gamma } => MaskFile::new(
            "case1",
            "case1",
            vec![("beta".into(), beta), ("gamma".into(), gamma)],
            case1_mask(Case1Params::new(beta, gamma))?,
        ),
        MaskRecipe::Case2a { part, sign } => {
            let mask = case2a_mask(Case2aParams { part, sign })?;
            let (name, mut params) = match part {
                Case2aPart::P1 { gamma } => ("case2a-p1", vec![("gamma".to_string(), gamma)]),
                Case2aPart::P2 { alpha } => ("case2a-p2", vec![("alpha".to_string(), alpha)]),
                Case2aPart::P3 => ("case2a-p3", vec![]),
            };
            params.push(("sign".into(), sign_value(sign)));
            MaskFile::new(name, "case2a", params, mask)
        }
        MaskRecipe::Case4a { index } => {
            let all = case4a_masks();
            let mask = index
                .checked_sub(1)
                .and_then(|i| all.get(i).cloned())
                .ok_or_else(|| Error::ParameterOutOfDomain(format!("case4a index {index} outside 1..={}", all.len())))?;
            MaskFile::new(&format!("case4a-{index}"), "case4a", vec![("index".into(), index as f64)], mask)
        }
        MaskRecipe::Haar => MaskFile::new("haar", "haar", vec![], haar_mask()),
        MaskRecipe::D4 => MaskFile::new("d4", "d4", vec![], d4_tensor_mask()),
    })
}

/// Filter bank for a mask file: separable for `d4`, otherwise the
/// centro-symmetric construction.
pub fn bank_for(file: &MaskFile) -> Result<WaveletBank> {
    if file.case == "d4" {
        tensor_bank_1d(&d4_taps())
    } else {
        derive_wavelet_bank(&file.mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shell::{parse_mask, render_mask};

    #[test]
    fn every_recipe_roundtrips() {
        let recipes = [
            MaskRecipe::Case1 { beta: 0.3, gamma: 2.0 },
            MaskRecipe::Case2a { part: Case2aPart::P1 { gamma: 1.0 }, sign: Sign::Plus },
            MaskRecipe::Case2a { part: Case2aPart::P2 { alpha: 2.0 }, sign: Sign::Minus },
            MaskRecipe::Case2a { part: Case2aPart::P3, sign: Sign::Minus },
            MaskRecipe::Case4a { index: 6 },
            MaskRecipe::Haar,
            MaskRecipe::D4,
        ];
        for r in recipes {
            let f = generate(r).unwrap();
            assert_eq!(parse_mask(&render_mask(&f)).unwrap(), f);
            assert!(bank_for(&f).is_ok(), "{r:?}");
        }
    }

    #[test]
    fn case4a_index_bounds() {
        assert!(generate(MaskRecipe::Case4a { index: 0 }).is_err());
        assert!(generate(MaskRecipe::Case4a { index: 7 }).is_err());
    }
}
