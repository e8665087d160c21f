#include "tea/neural/checkpoint.hpp"

#include "tea/error.hpp"

namespace tea::neural {

Json params_to_json(const std::vector<const Param*>& params) {
  Json out = Json::object();
  for (const auto* p : params) {
    Json data = Json::array();
    for (Eigen::Index k = 0; k < p->value.size(); ++k) data.push_back(p->value.data()[k]);
    out[p->name] = {{"rows", p->value.rows()}, {"cols", p->value.cols()}, {"data", std::move(data)}};
  }
  return out;
}

void params_from_json(const Json& j, const std::vector<Param*>& params) {
  for (auto* p : params) {
    if (!j.contains(p->name)) throw ShapeError("checkpoint is missing parameter " + p->name);
    const Json& t = j.at(p->name);
    const auto rows = t.at("rows").get<Eigen::Index>();
    const auto cols = t.at("cols").get<Eigen::Index>();
    const Json& data = t.at("data");
    if (rows != p->value.rows() || cols != p->value.cols() ||
        data.size() != static_cast<std::size_t>(rows * cols)) {
      throw ShapeError("checkpoint parameter " + p->name + " has the wrong shape");
    }
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
      p->value.data()[k] = data[static_cast<std::size_t>(k)].get<double>();
    }
    p->zero_grad();
  }
}

Json to_json(const TwoBranchShape& s) {
  return {{"input_dim", s.input_dim},         {"units", s.units},
          {"hidden", s.hidden},               {"classes", s.classes},
          {"input_dropout", s.input_dropout}, {"hidden_dropout", s.hidden_dropout}};
}

TwoBranchShape two_branch_shape_from_json(const Json& j) {
  TwoBranchShape s;
  s.input_dim = j.at("input_dim").get<int>();
  s.units = j.at("units").get<int>();
  s.hidden = j.at("hidden").get<int>();
  s.classes = j.at("classes").get<int>();
  s.input_dropout = j.at("input_dropout").get<double>();
  s.hidden_dropout = j.at("hidden_dropout").get<double>();
  return s;
}

Json to_json(const EventNetworkShape& s) {
  return {{"input_dim", s.input_dim},
          {"units", s.units},
          {"hidden", s.hidden},
          {"feature_hidden", s.feature_hidden},
          {"input_dropout", s.input_dropout},
          {"hidden_dropout", s.hidden_dropout}};
}

EventNetworkShape event_shape_from_json(const Json& j) {
  EventNetworkShape s;
  s.input_dim = j.at("input_dim").get<int>();
  s.units = j.at("units").get<int>();
  s.hidden = j.at("hidden").get<int>();
  s.feature_hidden = j.at("feature_hidden").get<int>();
  s.input_dropout = j.at("input_dropout").get<double>();
  s.hidden_dropout = j.at("hidden_dropout").get<double>();
  return s;
}

Json to_json(const TrainingConfig& c) {
  return {{"learning_rate", c.learning_rate}, {"batch_size", c.batch_size},
          {"epochs", c.epochs},               {"patience", c.patience},
          {"class_weights", c.class_weights}, {"seed", c.seed}};
}

TrainingConfig training_config_from_json(const Json& j) {
  TrainingConfig c;
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.epochs = j.value("epochs", c.epochs);
  c.patience = j.value("patience", c.patience);
  c.class_weights = j.value("class_weights", c.class_weights);
  c.seed = j.value("seed", c.seed);
  return c;
}

Json to_json(const TwoBranchModel& model) {
  return {{"kind", "two_branch"},
          {"shape", to_json(model.shape())},
          {"params", params_to_json(model.params())}};
}

TwoBranchModel two_branch_from_json(const Json& j) {
  if (j.value("kind", "") != "two_branch") throw ShapeError("checkpoint is not a two-branch model");
  TwoBranchModel model(two_branch_shape_from_json(j.at("shape")), 0);
  params_from_json(j.at("params"), model.params());
  return model;
}

Json to_json(const EventNetwork& model) {
  return {{"kind", "event_network"},
          {"shape", to_json(model.shape())},
          {"params", params_to_json(model.params())}};
}

EventNetwork event_network_from_json(const Json& j) {
  if (j.value("kind", "") != "event_network") throw ShapeError("checkpoint is not an event model");
  EventNetwork model(event_shape_from_json(j.at("shape")), 0);
  params_from_json(j.at("params"), model.params());
  return model;
}

}  // namespace tea::neural
