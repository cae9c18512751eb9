#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nl2bt/logical_form.hpp"

namespace nl2bt {

enum class Status { Success, Failure };

const char* to_string(Status status);

enum Axis : std::size_t { kX, kY, kZ, kRoll, kPitch, kYaw };

// Stand-in vehicle: a 6-DOF pose (meters, degrees) plus a log of what ran.
class MockPlant {
 public:
  using Pose = std::array<double, 6>;

  const Pose& pose() const { return pose_; }
  void set_pose(const Pose& pose) { pose_ = pose; }

  // Names of completed (successful) actions, in execution order.
  const std::vector<std::string>& transcript() const { return transcript_; }

  // Test hook: the leaf at `action_index` reports FAILURE without side effects.
  void inject_failure(std::size_t action_index) { fail_at_.insert(action_index); }
  bool failure_injected(std::size_t action_index) const {
    return fail_at_.count(action_index) != 0;
  }

 private:
  friend class PlantAccess;

  Pose pose_{};
  std::vector<std::string> transcript_;
  std::set<std::size_t> fail_at_;
};

struct TraceEntry {
  std::size_t step = 0;
  std::string action;
  std::vector<std::pair<std::string, std::string>> params;
  Status status = Status::Success;
  bool unknown_action = false;  // ran as a no-op

  bool operator==(const TraceEntry&) const = default;
};

struct RunResult {
  std::vector<TraceEntry> trace;
  Status status = Status::Success;
};

// Ticks each leaf of the Sequence once, left to right, stopping at the first
// FAILURE. move sets the given axes absolutely; flatten zeroes roll and pitch
// and sets depth (z) from `num`. Non-numeric values fail the leaf.
RunResult run(const SequenceNode& tree, MockPlant& plant);

// Parses with parse_bt_xml first; XmlError propagates.
RunResult run(std::string_view xml, MockPlant& plant);

// `step<TAB>action<TAB>k=v,...<TAB>status`
std::string format_trace_line(const TraceEntry& entry);

}  // namespace nl2bt
