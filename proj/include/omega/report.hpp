#pragma once

#include "omega/learn.hpp"
#include "omega/oracle.hpp"
#include "omega/product.hpp"
#include "omega/shaping.hpp"
#include "omega/solvers.hpp"
#include "omega/verify.hpp"

#include <json.hpp>

#include <ostream>

namespace omega {

using Json = nlohmann::ordered_json;

/// Product in the JSON MDP layout plus `accepting`: indices into `transitions`.
Json product_to_json(const ProductMdp& p);

/// Shaped model in the JSON MDP layout plus `target` (the stop state name,
/// or null) and `accepting`.
Json augmented_to_json(const AugmentedModel& m);

Json strategy_to_json(const ProductMdp& p, const Strategy& f);
Json solve_to_json(const AugmentedModel& m, const Solution& s);
Json oracle_to_json(const ProductMdp& p, const BuchiSolution& b);
/// The curve is summarized in blocks of `block` episodes; write_curve_csv
/// emits every episode.
Json learn_to_json(const TrainResult& r, std::size_t block = 1000);
Json verify_to_json(const VerifyReport& r);
Json sweep_to_json(const ThresholdReport& r);

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve);
/// Header: zeta,policy,psat_policy,psat_opt,is_optimal
void write_sweep_csv(std::ostream& os, const ThresholdReport& r);

}  // namespace omega
