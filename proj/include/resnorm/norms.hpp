#pragma once

#include <stdexcept>
#include <string>

namespace resnorm::norms {

/// The resource norm ||.||_mu in play.
enum class NormTag {
  SepBase,                // base norm over separable states
  Negativity,             // ||X^Gamma||_1
  ReshuffledNegativity,   // ||X^R||_1
  FwBase,                 // base norm over Wigner-positive states
  Wigner,                 // ||X||_W, l1 norm of the Wigner representation
  StabBase,               // base norm over the stabiliser polytope
  StabiliserP,            // ||X||_P, normalized l1 norm of Pauli coefficients
  GenRobustnessSep,       // 1 + R^g over separable states
  GenRobustnessFw,        // 1 + R^g over Wigner-positive states
  GenRobustnessStab,      // 1 + R^g over stabiliser states
};

struct NormMeta {
  const char* name;
  bool dual_multiplicative;  // whether ||.||^o is multiplicative under kron
};

inline NormMeta norm_meta(NormTag tag) {
  switch (tag) {
    case NormTag::SepBase: return {"sep-base", false};
    case NormTag::Negativity: return {"negativity", true};
    case NormTag::ReshuffledNegativity: return {"reshuffled-negativity", true};
    case NormTag::FwBase: return {"fw-base", false};
    case NormTag::Wigner: return {"wigner", true};
    case NormTag::StabBase: return {"stab-base", false};
    case NormTag::StabiliserP: return {"stabiliser-p", true};
    case NormTag::GenRobustnessSep: return {"g-robustness-sep", false};
    case NormTag::GenRobustnessFw: return {"g-robustness-fw", false};
    case NormTag::GenRobustnessStab: return {"g-robustness-stab", false};
  }
  throw std::invalid_argument("unknown norm tag");
}

inline std::string to_string(NormTag tag) { return norm_meta(tag).name; }

inline NormTag parse_norm_tag(const std::string& s) {
  for (NormTag t : {NormTag::SepBase, NormTag::Negativity, NormTag::ReshuffledNegativity,
                    NormTag::FwBase, NormTag::Wigner, NormTag::StabBase, NormTag::StabiliserP,
                    NormTag::GenRobustnessSep, NormTag::GenRobustnessFw,
                    NormTag::GenRobustnessStab}) {
    if (s == norm_meta(t).name) return t;
  }
  throw std::invalid_argument("unknown norm tag: " + s);
}

}  // namespace resnorm::norms
