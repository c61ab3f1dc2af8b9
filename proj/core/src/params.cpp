#include "kwp/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "kwp/errors.hpp"

namespace kwp {

void KwPParams::validate() const {
  const auto ok = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!ok(beta) || !ok(k) || !ok(a) || !ok(b)) {
    throw DomainError("Kw-P parameters must be positive and finite (beta=" + std::to_string(beta) +
                      ", k=" + std::to_string(k) + ", a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
}

int free_params(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Pareto: return 1;
    case ModelKind::EP: return 2;
    case ModelKind::BP: return 3;
    case ModelKind::KwP: return 3;
  }
  return 0;
}

std::string_view model_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Pareto: return "pareto";
    case ModelKind::EP: return "ep";
    case ModelKind::BP: return "bp";
    case ModelKind::KwP: return "kwp";
  }
  return "";
}

std::string_view model_label(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Pareto: return "Pareto";
    case ModelKind::EP: return "EP";
    case ModelKind::BP: return "BP";
    case ModelKind::KwP: return "Kw-P";
  }
  return "";
}

ModelKind parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  lower.erase(std::remove(lower.begin(), lower.end(), '-'), lower.end());
  for (ModelKind k : {ModelKind::Pareto, ModelKind::EP, ModelKind::BP, ModelKind::KwP}) {
    if (lower == model_name(k)) return k;
  }
  throw InputError("unknown model '" + std::string(name) + "' (expected pareto, ep, bp or kwp)");
}

}  // namespace kwp
