#pragma once

#include <string>
#include <string_view>

#include "redcard/algebra.hpp"
#include "redcard/cartan.hpp"
#include "redcard/models.hpp"
#include "redcard/optimize.hpp"

namespace redcard {

/// A synthesis result together with everything needed to reproduce it.
struct ResultDocument {
  ModelSpec model;
  SynthesisConfig config;
  Method method = Method::redcard;
  SynthesisResult result;
};

/// Deterministic JSON for a result document: same inputs give byte-identical
/// text.
std::string to_result_json(const ResultDocument& doc);
ResultDocument from_result_json(std::string_view text);

/// "sweep,fragment,cost,residual" rows for the per-iteration trace.
std::string trace_csv(const SynthesisResult& result);

std::string dla_report_json(const Dla& dla, const FrustrationGraph& graph);
std::string decompose_report_json(const CartanStructure& structure,
                                  const OrderingReport& report);

}  // namespace redcard
