#include "leojam/rfmodel.hpp"

#include <algorithm>

namespace leojam {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::kErc: return "erc";
    case PatternKind::kItuReference: return "itu";
    case PatternKind::kConstant: return "constant";
  }
  return "erc";
}

PatternKind pattern_kind_from_string(std::string_view name) {
  if (name == "erc") return PatternKind::kErc;
  if (name == "itu" || name == "itu_ref") return PatternKind::kItuReference;
  if (name == "constant") return PatternKind::kConstant;
  throw ConfigError("unknown gain pattern '" + std::string(name) + "' (expected erc, itu, constant)");
}

GainPattern GainPattern::erc(double g_max_dbi) {
  GainPattern p;
  p.kind = PatternKind::kErc;
  p.g_max_dbi = g_max_dbi;
  p.d_over_lambda = std::pow(10.0, (g_max_dbi - 7.7) / 20.0);
  p.g1_dbi = 2.0 + 15.0 * std::log10(p.d_over_lambda);
  p.phi_m_deg = 20.0 / p.d_over_lambda * std::sqrt(std::max(0.0, g_max_dbi - p.g1_dbi));
  return p;
}

GainPattern GainPattern::itu_reference(double g_max_dbi) {
  GainPattern p = erc(g_max_dbi);
  p.kind = PatternKind::kItuReference;
  return p;
}

GainPattern GainPattern::constant(double g_max_dbi) {
  GainPattern p = erc(g_max_dbi);
  p.kind = PatternKind::kConstant;
  return p;
}

GainPattern GainPattern::of_kind(PatternKind kind, double g_max_dbi) {
  switch (kind) {
    case PatternKind::kItuReference: return itu_reference(g_max_dbi);
    case PatternKind::kConstant: return constant(g_max_dbi);
    case PatternKind::kErc:
    default: return erc(g_max_dbi);
  }
}

void GainPattern::validate() const {
  if (!std::isfinite(g_max_dbi)) throw ConfigError("pattern peak gain must be finite");
  if (!(d_over_lambda > 0.0)) throw ConfigError("pattern D/lambda must be positive");
  if (kind == PatternKind::kErc && !(g_max_dbi > g1_dbi)) {
    throw ConfigError("ERC pattern needs peak gain above the first sidelobe level");
  }
}

}  // namespace leojam
