//! The catalog of named checks.

use serde::Serialize;

use super::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Degree0,
    Hecke,
    Algebra,
    Pairing,
    Duality,
    Engine,
    Monoidal,
    Emss,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Degree0, Suite::Hecke, Suite::Algebra, Suite::Pairing, Suite::Duality, Suite::Engine, Suite::Monoidal, Suite::Emss];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Degree0 => "degree0",
            Suite::Hecke => "hecke",
            Suite::Algebra => "algebra",
            Suite::Pairing => "pairing",
            Suite::Duality => "duality",
            Suite::Engine => "engine",
            Suite::Monoidal => "monoidal",
            Suite::Emss => "emss",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Scenario kinds able to run the suite.
    pub fn runs_on(self, kind: Kind) -> bool {
        match self {
            Suite::Degree0 | Suite::Hecke => kind == Kind::FiniteGroup,
            Suite::Algebra | Suite::Pairing | Suite::Duality | Suite::Monoidal => kind == Kind::CrossedModel,
            Suite::Engine => kind == Kind::DgEngine,
            Suite::Emss => matches!(kind, Kind::CrossedModel | Kind::Emss),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    pub summary: &'static str,
}

const fn check(id: &'static str, suite: Suite, anchor: &'static str, summary: &'static str) -> CheckInfo {
    CheckInfo { id, suite, anchor, summary }
}

static CATALOG: &[CheckInfo] = &[
    check("char-fn-action", Suite::Degree0, "f:g-char", "a · char_h^v = char_{ah}^v and char_h^v(h) = v"),
    check("j-involution", Suite::Degree0, "prop:anti-inv", "J(J(α)) = α and J(α) is U-linear"),
    check("jprime-involution", Suite::Degree0, "prop:anti-inv", "J'(J'(λ)) = λ"),
    check("rec-roundtrip", Suite::Degree0, "rec", "rec_inv ∘ rec = id and rec ∘ rec_inv = id"),
    check("jprime-via-rec", Suite::Degree0, "rec", "J' = rec ∘ J ∘ rec_inv"),
    check("refined-trace", Suite::Degree0, "prop:refined-trace", "Tr⟨C, D⟩ = C ∘ D"),
    check("jprime-j", Suite::Degree0, "prop:J'-J", "⟨J'C, D⟩ = J'⟨C, JD⟩"),
    check("anti-swap", Suite::Degree0, "lem:anti'-swap", "J' on Hom_G(X ⊗ X, V) is precomposition with the swap"),
    check("factor-fr", Suite::Degree0, "lem:factorFR", "J'(Fr_h(v)) = Fr_{h^-1}(h^-1 v)"),
    check("tr-cores", Suite::Degree0, "lem:Tr-cores", "Tr(Fr_h(v)) = Σ_{u ∈ U/U_h} u v"),
    check("support-swap", Suite::Degree0, "rem:anti-inv-support", "J sends the UhU component to the Uh^-1U component"),
    check("jprime-support-swap", Suite::Degree0, "rem:J'-fin", "J' sends the UhU restriction to the Uh^-1U restriction"),
    check("shapiro", Suite::Degree0, "prop:coho-anti", "Sh_h is invertible and Sh_{h^-1} ∘ J = h_* ∘ Sh_h"),
    check("hecke-associative", Suite::Hecke, "hecke", "convolution on k[U\\G/U] is associative and unital"),
    check("j0-anti", Suite::Hecke, "hecke", "J0(ab) = J0(b) J0(a)"),
    check("j0-involution", Suite::Hecke, "hecke", "J0(J0(a)) = a"),
    check("hecke-endomorphism", Suite::Hecke, "hecke", "a ↦ End_G(X_U) reverses the order of products"),
    check("j0-matches-j", Suite::Hecke, "rem:anti-inv-support", "J on Hom_U(k, X_U) is J0"),
    check("e-associative", Suite::Algebra, "build-E", "E* is associative and unital, exhaustively on basis triples"),
    check("chi-determinant", Suite::Algebra, "diag:cores-chi", "χ_G is multiplicative and χ_G(c) = det(c | H^1) by cofactor expansion"),
    check("j-anti-involution", Suite::Algebra, "prop:coho-anti", "J is an involution reversing graded products"),
    check("jchi-anti-involution", Suite::Algebra, "rem:Jchi-anti", "J ⊗ χ_G is an involution reversing graded products"),
    check("degree0-hecke", Suite::Algebra, "hecke", "E^0 and J^0 agree with the Hecke algebra of the finite quotient"),
    check("gram-invertible", Suite::Pairing, "prop:onesided-bimod", "the pairing B^i × E^{d-i} → k is perfect in every degree"),
    check("linear-i", Suite::Pairing, "linear", "⟨f ·₂ τ, e⟩ = ⟨f, τ e⟩"),
    check("linear-ii", Suite::Pairing, "linear", "⟨f ·₁ τ, e⟩ = (-1)^{s(d-i-s)} ⟨f, e σ(τ)⟩"),
    check("actions-commute", Suite::Pairing, "secondfact", "the two right actions on B commute up to the Koszul sign"),
    check("swap-interchange", Suite::Pairing, "cor:swap-Jchi", "ς* is an involution with ς*(f ·₂ τ) = ς*(f) ·₁ τ"),
    check("ext2-swap", Suite::Pairing, "operad", "the slot swap of E*(2) exchanges the two right actions"),
    check("delta-exact", Suite::Duality, "delta-gr", "Δ_gr takes short exact sequences to short exact sequences"),
    check("delta-injective", Suite::Duality, "delta-gr", "maps into Δ_gr(E*) extend along monomorphisms"),
    check("delta-e", Suite::Duality, "deltaE", "an isomorphism B → Δ_gr(E*) is found"),
    check("maindual", Suite::Duality, "maindual", "Δ_gr(M) is matched for M ∈ {E*, k, H*(U, k)}"),
    check("tor-lambda", Suite::Engine, "dg-oracle", "Tor_{Λ(y)}(k, k) is one-dimensional in every weight of the window"),
    check("ext-lambda", Suite::Engine, "dg-oracle", "Ext_{Λ(y)}(k, k) is one-dimensional in every weight of the window"),
    check("resolution-invariance", Suite::Engine, "dg-oracle", "replacing an argument by its resolution leaves ⊗^L and RHom unchanged"),
    check("tensor-balanced", Suite::Engine, "dg-oracle", "resolving either argument of ⊗^L gives the same cohomology"),
    check("boxtimes-unit", Suite::Monoidal, "tensor", "the unit kernel acts as the identity on {A, k} × {A, k}"),
    check("boxtimes-assoc", Suite::Monoidal, "tensor", "(X ⊠ Y) ⊠ Z and X ⊠ (Y ⊠ Z) agree on {A, k}^3"),
    check("koszul-descent", Suite::Monoidal, "enhance", "the slot swap descends to the box product"),
    check("adjunction", Suite::Monoidal, "adjoint", "Hom(M ⊠ N, R) and Hom(M, Hom^⊠(N, R)) agree on {A, k}^3"),
    check("emss-abutment", Suite::Emss, "EMSS", "Σ E_∞ equals h*(P ⊗^L M) on every instance"),
    check("emss-e2", Suite::Emss, "EMSS", "E_2 is graded Tor of h*(P) and M"),
    check("emss-rank-identity", Suite::Emss, "EMSS", "dim E_{r+1} = dim E_r - rank d_r - rank d_r into it"),
    check("emss-tor-vanishing", Suite::Emss, "EMSS", "E_2^{s,t} = 0 for s > 0"),
    check("emss-formal-degeneration", Suite::Emss, "EMSS", "formal P and M give E_2 = E_∞"),
    check("emss-ext2", Suite::Emss, "EMSS", "E*(2) ⊗^L (E ⊗ E) has the dimensions of E*(2)"),
    check("emss-equivariance", Suite::Emss, "EMSS", "the residual E*-action on E*(2) commutes with d and the filtration"),
    check("cohdelta-collapse", Suite::Emss, "cohdelta", "Ext^{s>0}(M, Δ_gr E*) = 0 and h*(RHom(M, Δ_gr E*)) ≅ Δ_gr(M)"),
];

/// Every check, in suite order.
pub fn list_checks() -> &'static [CheckInfo] {
    CATALOG
}

pub fn find_check(id: &str) -> Option<&'static CheckInfo> {
    CATALOG.iter().find(|c| c.id == id)
}

pub fn checks_in(suite: Suite) -> impl Iterator<Item = &'static CheckInfo> {
    CATALOG.iter().filter(move |c| c.suite == suite)
}
