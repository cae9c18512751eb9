#include <gtest/gtest.h>

#include <random>

#include "nl2bt/bt_interpreter.hpp"
#include "nl2bt/xml_emitter.hpp"
#include "support/generators.hpp"

using namespace nl2bt;

namespace {

SequenceNode lf(std::string_view text) { return parse_logical_form(text); }

std::string xml_of(std::string_view text) { return emit(lf(text), builtin_registry()); }

std::vector<std::string> names(const RunResult& r) {
  std::vector<std::string> out;
  for (const TraceEntry& e : r.trace) out.push_back(e.action);
  return out;
}

}  // namespace

TEST(Run, GoalThenGate) {
  MockPlant plant;
  RunResult r = run(std::string_view(xml_of("( seq ( goal ) ( gate ) )")), plant);
  EXPECT_EQ(names(r), (std::vector<std::string>{"goal", "gate"}));
  EXPECT_EQ(r.trace[0].status, Status::Success);
  EXPECT_EQ(r.trace[1].status, Status::Success);
  EXPECT_EQ(r.status, Status::Success);
  EXPECT_EQ(plant.transcript(), (std::vector<std::string>{"goal", "gate"}));
}

TEST(Run, EmptySequence) {
  MockPlant plant;
  RunResult r = run(std::string_view(xml_of("( seq )")), plant);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.status, Status::Success);
}

TEST(Run, InjectedFailureStopsTheSequence) {
  MockPlant plant;
  plant.inject_failure(0);
  RunResult r = run(std::string_view(xml_of(
                        "( seq ( say ( words ( $0 ( hi ) ) ) ) ( find ( val ( $1 ( buoy ) ) ) ) )")),
                    plant);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].action, "say");
  EXPECT_EQ(r.trace[0].status, Status::Failure);
  EXPECT_EQ(r.status, Status::Failure);
  EXPECT_TRUE(plant.transcript().empty());
}

TEST(Run, MoveSetsAxesAbsolutely) {
  MockPlant plant;
  run(std::string_view(xml_of("( seq ( move ( x ( $0 ( 1.5 ) ) ) ) )")), plant);
  EXPECT_EQ(plant.pose()[kX], 1.5);
  run(lf("( seq ( move ( y ( $0 ( -2 ) ) ) ( yaw ( $1 ( 90 ) ) ) ) ( move ( x ( $2 ( +3 ) ) ) ) )"), plant);
  EXPECT_EQ(plant.pose(), (MockPlant::Pose{3.0, -2.0, 0.0, 0.0, 0.0, 90.0}));
}

TEST(Run, FlattenLevelsAndSetsDepth) {
  MockPlant plant;
  plant.set_pose({1, 2, 3, 10, -20, 45});
  run(lf("( seq ( flatten ( num ( $0 ( -4.5 ) ) ) ) )"), plant);
  EXPECT_EQ(plant.pose(), (MockPlant::Pose{1, 2, -4.5, 0, 0, 45}));
  run(lf("( seq ( flatten ) )"), plant);
  EXPECT_EQ(plant.pose()[kZ], -4.5);
}

TEST(Run, NonNumericValueFailsAndLeavesPose) {
  MockPlant plant;
  RunResult r = run(lf("( seq ( move ( x ( $0 ( 1 ) ) ) ( z ( $1 ( deep ) ) ) ) ( goal ) )"), plant);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.status, Status::Failure);
  EXPECT_EQ(plant.pose(), MockPlant::Pose{});
  for (const char* bad : {"1 2", "1e", "nan?", "", "0x10"}) {
    SequenceNode tree = lf("( seq ( flatten ( num ( $0 ( 1 ) ) ) ) )");
    tree.actions[0].params[0].value = bad;
    MockPlant p;
    EXPECT_EQ(run(tree, p).status, Status::Failure) << bad;
  }
}

TEST(Run, UnknownActionsAreFlaggedNoOps) {
  MockPlant plant;
  RunResult r = run(lf("( seq ( warp ( speed ( $0 ( 9 ) ) ) ) ( goal ) )"), plant);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(r.trace[0].unknown_action);
  EXPECT_FALSE(r.trace[1].unknown_action);
  EXPECT_EQ(r.status, Status::Success);
  EXPECT_EQ(plant.transcript(), (std::vector<std::string>{"warp", "goal"}));
}

TEST(Run, BadXmlPropagates) {
  MockPlant plant;
  EXPECT_THROW(run(std::string_view("<root/>"), plant), XmlError);
  EXPECT_THROW(run(std::string_view("<root"), plant), XmlError);
}

TEST(Trace, LineFormat) {
  MockPlant plant;
  RunResult r = run(lf("( seq ( gate ) ( move ( x ( $0 ( 1 ) ) ) ( yaw ( $1 ( 2 ) ) ) ) )"), plant);
  EXPECT_EQ(format_trace_line(r.trace[0]), "0\tgate\t\tSUCCESS");
  EXPECT_EQ(format_trace_line(r.trace[1]), "1\tmove\tx=1,yaw=2\tSUCCESS");
}

TEST(Properties, FailFastAndOrder) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    SequenceNode tree = gen::random_tree(rng);
    // Numeric-only values so move/flatten never fail on their own.
    for (ActionNode& a : tree.actions) {
      for (ParamNode& p : a.params) p.value = std::to_string(gen::below(rng, 20));
    }
    MockPlant clean;
    RunResult ok = run(tree, clean);
    ASSERT_EQ(ok.status, Status::Success);
    ASSERT_EQ(ok.trace.size(), tree.actions.size());
    for (std::size_t k = 0; k < tree.actions.size(); ++k) {
      EXPECT_EQ(ok.trace[k].action, tree.actions[k].name);
      EXPECT_EQ(ok.trace[k].step, k);
    }
    MockPlant again;
    run(tree, again);
    EXPECT_EQ(again.pose(), clean.pose());

    if (tree.actions.empty()) continue;
    std::size_t k = gen::below(rng, tree.actions.size());
    MockPlant failing;
    failing.inject_failure(k);
    RunResult bad = run(tree, failing);
    EXPECT_EQ(bad.trace.size(), k + 1);
    EXPECT_EQ(bad.status, Status::Failure);
    EXPECT_EQ(bad.trace.back().status, Status::Failure);
  }
}
