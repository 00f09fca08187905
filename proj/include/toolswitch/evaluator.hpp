#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <type_traits>

#include "toolswitch/ktns.hpp"
#include "toolswitch/mpca.hpp"

namespace toolswitch {

enum class EvaluatorKind { Ktns, KtnsBitwise, Mpca, MpcaBitwise };

inline constexpr std::array<EvaluatorKind, 4> all_evaluators{
    EvaluatorKind::Ktns, EvaluatorKind::KtnsBitwise, EvaluatorKind::Mpca, EvaluatorKind::MpcaBitwise};

constexpr std::string_view to_string(EvaluatorKind kind) {
  switch (kind) {
    case EvaluatorKind::Ktns: return "ktns";
    case EvaluatorKind::KtnsBitwise: return "ktns-bitwise";
    case EvaluatorKind::Mpca: return "mpca";
    case EvaluatorKind::MpcaBitwise: return "mpca-bitwise";
  }
  return "?";
}

inline std::optional<EvaluatorKind> parse_evaluator(std::string_view name) {
  for (auto kind : all_evaluators)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

constexpr bool reports_pipes(EvaluatorKind kind) {
  return kind == EvaluatorKind::Mpca || kind == EvaluatorKind::MpcaBitwise;
}

/// Calls f with a stateless callable `eval(inst, order, scratch) -> EvalResult`
/// for `kind`, so hot loops are compiled once per evaluator without a switch
/// per call.
template <class F>
decltype(auto) with_evaluator(EvaluatorKind kind, F&& f) {
  switch (kind) {
    case EvaluatorKind::Ktns:
      return f([](const Instance& i, std::span<const JobIndex> o, EvaluatorScratch& s) {
        return ktns_evaluate(i, o, s);
      });
    case EvaluatorKind::KtnsBitwise:
      return f([](const Instance& i, std::span<const JobIndex> o, EvaluatorScratch& s) {
        return ktns_bitwise_evaluate(i, o, s);
      });
    case EvaluatorKind::Mpca:
      return f([](const Instance& i, std::span<const JobIndex> o, EvaluatorScratch& s) {
        return mpca_evaluate(i, o, s);
      });
    case EvaluatorKind::MpcaBitwise:
    default:
      return f([](const Instance& i, std::span<const JobIndex> o, EvaluatorScratch& s) {
        return mpca_bitwise_evaluate(i, o, s);
      });
  }
}

inline EvalResult evaluate(EvaluatorKind kind, const Instance& inst, std::span<const JobIndex> order,
                           EvaluatorScratch& scratch) {
  return with_evaluator(kind, [&](auto eval) { return eval(inst, order, scratch); });
}

}  // namespace toolswitch
