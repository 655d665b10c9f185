#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "twzhu/voa.hpp"

namespace twzhu {

/// Loads a VOA mode file. Basis eigendata j1, j2 register the automorphisms "g1", "g2"
/// and "g3" = g1 g2. Every table entry is checked against the grading rule.
std::shared_ptr<Voa> load_voa(const nlohmann::json& doc);
/// Loads a module mode file over V. The optional "twist" field names an automorphism of V
/// (default "id"); mode indices must lie in the class of that twist.
std::shared_ptr<Module> load_module(const nlohmann::json& doc, std::shared_ptr<const Voa> V);

nlohmann::json read_json_file(const std::string& path);

/// Rationals as "p/q"; other cyclotomic values as {"N": N, "coeffs": ["p/q", ...]}.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

/// Full mode table of V within its window, with j1, j2 taken from the given automorphisms.
nlohmann::json export_voa(const Voa& V, const Automorphism& g1, const Automorphism& g2);
/// Full mode table of M within its window; `twist` is written as the twist name.
nlohmann::json export_module(const Module& M, const std::string& twist);

/// Table module built from a mode file keeps the VOA it refers to alive.
class LoadedModule : public TableModule {
 public:
  LoadedModule(std::string name, std::shared_ptr<const Voa> V, GradedBasis basis, Rational h, Automorphism twist)
      : TableModule(std::move(name), V.get(), std::move(basis), h, std::move(twist)), keep_(std::move(V)) {}

 private:
  std::shared_ptr<const Voa> keep_;
};

}  // namespace twzhu
