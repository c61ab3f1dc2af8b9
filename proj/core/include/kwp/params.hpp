#pragma once

#include <string>
#include <string_view>

namespace kwp {

/// Parameter vector (beta, k, a, b) of the Kw-P family; support is [beta, inf).
struct KwPParams {
  double beta = 1.0;
  double k = 1.0;
  double a = 1.0;
  double b = 1.0;

  /// Throws DomainError unless all four entries are finite and positive.
  void validate() const;

  bool operator==(const KwPParams&) const = default;
};

enum class ModelKind { Pareto, EP, BP, KwP };

/// Number of shape parameters estimated by fit(); beta is fixed beforehand.
int free_params(ModelKind kind) noexcept;

/// Lower-case CLI name: "pareto", "ep", "bp", "kwp".
std::string_view model_name(ModelKind kind) noexcept;

/// Display label as used in tables: "Pareto", "EP", "BP", "Kw-P".
std::string_view model_label(ModelKind kind) noexcept;

/// Inverse of model_name (case-insensitive); throws InputError otherwise.
ModelKind parse_model(std::string_view name);

}  // namespace kwp
