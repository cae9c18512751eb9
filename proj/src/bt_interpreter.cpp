#include "nl2bt/bt_interpreter.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "nl2bt/xml_emitter.hpp"

namespace nl2bt {

const char* to_string(Status status) {
  return status == Status::Success ? "SUCCESS" : "FAILURE";
}

class PlantAccess {
 public:
  static MockPlant::Pose& pose(MockPlant& plant) { return plant.pose_; }
  static void record(MockPlant& plant, std::string name) {
    plant.transcript_.push_back(std::move(name));
  }
};

namespace {

std::optional<double> to_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

const std::map<std::string, Axis, std::less<>>& move_axes() {
  static const std::map<std::string, Axis, std::less<>> axes{
      {"x", kX},         {"y", kY},         {"z", kZ},   {"roll", kRoll},
      {"pitch", kPitch}, {"raw", kYaw},     {"yaw", kYaw},
  };
  return axes;
}

bool is_record_only(std::string_view action) {
  return action == "say" || action == "clean" || action == "bring" ||
         action == "find" || action == "goal" || action == "gate";
}

// Pose is written only once every value has been read, so a bad value
// leaves the plant untouched.
Status tick_move(const ActionNode& action, MockPlant::Pose& pose) {
  MockPlant::Pose next = pose;
  for (const ParamNode& param : action.params) {
    auto axis = move_axes().find(param.name);
    if (axis == move_axes().end()) continue;
    auto value = to_number(param.value);
    if (!value) return Status::Failure;
    next[axis->second] = *value;
  }
  pose = next;
  return Status::Success;
}

Status tick_flatten(const ActionNode& action, MockPlant::Pose& pose) {
  MockPlant::Pose next = pose;
  next[kRoll] = 0;
  next[kPitch] = 0;
  for (const ParamNode& param : action.params) {
    if (param.name != "num") continue;
    auto depth = to_number(param.value);
    if (!depth) return Status::Failure;
    next[kZ] = *depth;
  }
  pose = next;
  return Status::Success;
}

}  // namespace

RunResult run(const SequenceNode& tree, MockPlant& plant) {
  RunResult result;
  for (std::size_t i = 0; i < tree.actions.size(); ++i) {
    const ActionNode& action = tree.actions[i];
    TraceEntry entry;
    entry.step = i;
    entry.action = action.name;
    for (const ParamNode& param : action.params) {
      entry.params.emplace_back(param.name, param.value);
    }

    if (plant.failure_injected(i)) {
      entry.status = Status::Failure;
    } else if (action.name == "move") {
      entry.status = tick_move(action, PlantAccess::pose(plant));
    } else if (action.name == "flatten") {
      entry.status = tick_flatten(action, PlantAccess::pose(plant));
    } else {
      entry.unknown_action = !is_record_only(action.name);
      entry.status = Status::Success;
    }
    if (entry.status == Status::Success) PlantAccess::record(plant, action.name);

    result.trace.push_back(std::move(entry));
    if (result.trace.back().status == Status::Failure) {
      result.status = Status::Failure;
      break;
    }
  }
  return result;
}

RunResult run(std::string_view xml, MockPlant& plant) {
  return run(parse_bt_xml(xml), plant);
}

std::string format_trace_line(const TraceEntry& entry) {
  std::string line = std::to_string(entry.step);
  line += '\t';
  line += entry.action;
  line += '\t';
  for (std::size_t i = 0; i < entry.params.size(); ++i) {
    if (i) line += ',';
    line += entry.params[i].first;
    line += '=';
    line += entry.params[i].second;
  }
  line += '\t';
  line += to_string(entry.status);
  return line;
}

}  // namespace nl2bt
