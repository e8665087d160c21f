#pragma once

// Structured-text (JSON) checkpoints: shapes, configuration and every
// parameter tensor by name.

#include <json.hpp>
#include <vector>

#include "tea/neural/event_network.hpp"
#include "tea/neural/training.hpp"
#include "tea/neural/two_branch.hpp"

namespace tea::neural {

using Json = nlohmann::ordered_json;

Json params_to_json(const std::vector<const Param*>& params);
/// Loads values into existing parameters; throws ShapeError on a missing name
/// or a shape mismatch.
void params_from_json(const Json& j, const std::vector<Param*>& params);

Json to_json(const TwoBranchShape& s);
TwoBranchShape two_branch_shape_from_json(const Json& j);
Json to_json(const EventNetworkShape& s);
EventNetworkShape event_shape_from_json(const Json& j);
Json to_json(const TrainingConfig& c);
TrainingConfig training_config_from_json(const Json& j);

Json to_json(const TwoBranchModel& model);
TwoBranchModel two_branch_from_json(const Json& j);
Json to_json(const EventNetwork& model);
EventNetwork event_network_from_json(const Json& j);

}  // namespace tea::neural
