//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string;
//! failures come back as `{"error": kind, "message": ...}` so the page never
//! has to catch exceptions.

use nss_core::algebra::{FieldSpec, Matrix, Scalar};
use nss_core::constructions::example1;
use nss_core::detsum::{build_h_matrix, expand_det_sum, verify_rank_bound};
use nss_core::flats::{random_arrangement, removal_experiment};
use nss_core::rng::{random_family, SplitMix64};
use nss_core::sumgraph::clique_rank_link;
use nss_core::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest values the page accepts; beyond these the exact arithmetic in a
/// browser tab gets slow.
const MAX_K: usize = 6;
const MAX_FAMILY: usize = 40;
const MAX_FLATS: usize = 60;

fn respond(result: Result<Value>) -> String {
    result
        .unwrap_or_else(|e| json!({ "error": e.kind(), "message": e.to_string() }))
        .to_string()
}

fn field(spec: &str) -> Result<FieldSpec> {
    spec.trim().parse()
}

fn limit(name: &str, value: usize, max: usize) -> Result<()> {
    if value == 0 || value > max {
        return Err(Error::InvalidParameter(format!("{name} must be in 1..={max}, got {value}")));
    }
    Ok(())
}

/// Parses a matrix written one row per line (or `;`-separated), with
/// entries separated by spaces or commas. Rational entries may be `p/q`.
pub fn parse_matrix(field: FieldSpec, text: &str) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = text
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split([' ', ',', '\t'])
                .filter(|e| !e.is_empty())
                .map(|e| Scalar::parse_in(field, e))
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("rows have different lengths".into()));
    }
    Matrix::from_scalars(field, rows.len(), cols, rows.into_iter().flatten().collect())
}

fn grid(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

/// Expands `det(A + B)` into its minor products and checks the total.
#[wasm_bindgen]
pub fn expand(field_spec: &str, a: &str, b: &str) -> String {
    respond((|| {
        let f = field(field_spec)?;
        let (a, b) = (parse_matrix(f, a)?, parse_matrix(f, b)?);
        limit("k", a.rows(), MAX_K)?;
        let expansion = expand_det_sum(&a, &b)?;
        let det = a.add(&b)?.det()?;
        let nonzero = expansion.terms.iter().filter(|t| !t.product.is_zero()).count();
        Ok(json!({
            "field": f,
            "k": expansion.k,
            "terms": expansion.terms,
            "nonzero_terms": nonzero,
            "total": expansion.total,
            "det": det,
            "agrees": det == expansion.total,
        }))
    })())
}

/// Builds `H = (det(A_i + B_j))` for a seeded family and reports its rank,
/// zero pattern and largest diagonal block.
///
/// `family` is `"random"` (independent families on each side) or
/// `"sign-diagonal"` (the ±1 diagonal matrices, `n = 2^k`, on both sides).
#[wasm_bindgen]
pub fn h_matrix(field_spec: &str, family: &str, k: usize, n: usize, seed: u64) -> String {
    respond((|| {
        let f = field(field_spec)?;
        limit("k", k, MAX_K)?;
        let (a, b) = match family {
            "random" => {
                limit("n", n, MAX_FAMILY)?;
                let mut rng = SplitMix64::new(seed);
                (random_family(&mut rng, f, n, k), random_family(&mut rng, f, n, k))
            }
            "sign-diagonal" => {
                if f != FieldSpec::Rationals {
                    return Err(Error::InvalidParameter("the sign-diagonal family is built over Q".into()));
                }
                limit("k", k, 5)?;
                let fam = example1(k, 1)?;
                (fam.members.clone(), fam.members)
            }
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        };
        let h = build_h_matrix(&a, &b)?;
        let link = clique_rank_link(&h)?;
        Ok(json!({
            "field": f,
            "k": k,
            "n": h.n(),
            "entries": grid(h.entries()),
            "rank_bound": verify_rank_bound(&h),
            "diagonal_block": link,
        }))
    })())
}

/// Runs the removal chain on a seeded arrangement of 2-flats in R^4 with
/// `generic` flats in general position and the rest sharing a degenerate
/// slope pattern.
#[wasm_bindgen]
pub fn flats_removal(n: usize, generic: usize, seed: u64) -> String {
    respond((|| {
        limit("n", n, MAX_FLATS)?;
        let mut rng = SplitMix64::new(seed);
        let arrangement = random_arrangement(&mut rng, n, 2, generic.min(n))?;
        let report = removal_experiment(&arrangement)?;
        Ok(json!({ "flats": arrangement.to_json(), "report": report }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn expansion_agrees_with_determinant() {
        let v = parse(&expand("Q", "1 2\n3 4", "0 1; 1/2 0"));
        assert_eq!(v["terms"].as_array().unwrap().len(), 6);
        assert_eq!(v["agrees"], true);
        // det [[1, 3], [7/2, 4]] = 4 - 21/2
        assert_eq!(v["total"], "-13/2");
    }

    #[test]
    fn errors_are_reported_as_json() {
        let v = parse(&expand("Q", "1 2\n3 4", "1 2 3"));
        assert!(v["error"].is_string());
        assert_eq!(parse(&expand("Fp:4", "1", "1"))["error"], "NonPrimeModulus");
        assert!(parse(&h_matrix("Q", "random", 2, 0, 0))["error"].is_string());
    }

    #[test]
    fn sign_diagonal_rank_is_two_to_the_k() {
        let v = parse(&h_matrix("Q", "sign-diagonal", 3, 0, 0));
        assert_eq!(v["n"], 8);
        assert_eq!(v["rank_bound"]["rank"], 8);
        assert_eq!(v["diagonal_block"]["block_size"], 8);
    }

    #[test]
    fn random_h_respects_the_bound() {
        let v = parse(&h_matrix("Fp:5", "random", 2, 12, 7));
        assert_eq!(v["entries"].as_array().unwrap().len(), 12);
        assert_eq!(v["rank_bound"]["holds"], true);
    }

    #[test]
    fn removal_chain_holds() {
        let v = parse(&flats_removal(20, 5, 3));
        assert_eq!(v["flats"].as_array().unwrap().len(), 20);
        assert_eq!(v["report"]["holds"], true);
    }
}
