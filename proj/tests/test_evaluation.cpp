#include <gtest/gtest.h>

#include <map>
#include <stdexcept>

#include "nl2bt/evaluation.hpp"
#include "nl2bt/nl_frontend.hpp"

using namespace nl2bt;

namespace {

Corpus small_corpus() {
  return read_tsv(
      "reach the goal\t( seq ( goal ) )\n"
      "say hi\t( seq ( say ( words ( $0 ( hi ) ) ) ) )\n"
      "cross the gate then find the buoy\t( seq ( gate ) ( find ( val ( $0 ( buoy ) ) ) ) )\n",
      Split::Test);
}

Frontend gold_lookup(const Corpus& corpus) {
  auto table = std::make_shared<std::map<std::string, std::string, std::less<>>>();
  for (const CorpusPair& p : corpus.pairs) (*table)[p.utterance] = p.logical_form;
  return [table](std::string_view u) { return parse_logical_form(table->find(u)->second); };
}

}  // namespace

TEST(Evaluate, GoldOracleScoresOne) {
  Corpus corpus = small_corpus();
  EvalReport report = evaluate(gold_lookup(corpus), corpus);
  EXPECT_EQ(report.total, 3u);
  EXPECT_EQ(report.exact_matches, 3u);
  EXPECT_DOUBLE_EQ(report.accuracy, 1.0);
  EXPECT_TRUE(report.failures.empty());
}

TEST(Evaluate, ConstantEmptySequenceScoresZero) {
  EvalReport report = evaluate([](std::string_view) { return SequenceNode{}; }, small_corpus());
  EXPECT_DOUBLE_EQ(report.accuracy, 0.0);
  EXPECT_EQ(report.failures.size(), 3u);
  EXPECT_EQ(report.failures[1].expected, "( seq ( say ( words ( $0 ( hi ) ) ) ) )");
  EXPECT_EQ(report.failures[1].produced, "( seq )");
}

TEST(Evaluate, EmptyCorpus) {
  EvalReport report = evaluate([](std::string_view) { return SequenceNode{}; }, Corpus{});
  EXPECT_EQ(report.total, 0u);
  EXPECT_DOUBLE_EQ(report.accuracy, 1.0);
}

TEST(Evaluate, ThrowingFrontendIsAMiss) {
  EvalReport report = evaluate(
      [](std::string_view u) -> SequenceNode {
        if (u == "say hi") throw std::runtime_error("boom");
        return parse_logical_form("( seq ( goal ) )");
      },
      small_corpus());
  EXPECT_EQ(report.exact_matches, 1u);
  ASSERT_EQ(report.failures.size(), 2u);
  EXPECT_EQ(report.failures[0].index, 1u);
  EXPECT_EQ(report.failures[0].produced, "error: boom");
}

TEST(Evaluate, GoldIsCanonicalizedBeforeMatching) {
  Corpus spaced = read_tsv("say hi\t(  seq   ( say ( words ( $7 ( hi ) ) ) )   )\n");
  Frontend say_hi = [](std::string_view) {
    return parse_logical_form("( seq ( say ( words ( $0 ( hi ) ) ) ) )");
  };
  EXPECT_DOUBLE_EQ(evaluate(say_hi, spaced).accuracy, 1.0);
  // Parentheses glued to words are not tokens, so this gold stays unparsed.
  Corpus corpus = read_tsv("say hi\t(   seq (say (words ($7 (hi))))  )\n");
  EvalReport raw = evaluate(say_hi, corpus);
  EXPECT_DOUBLE_EQ(raw.accuracy, 0.0);
  EXPECT_EQ(raw.failures[0].expected, "(   seq (say (words ($7 (hi))))  )");
}

TEST(Evaluate, ParallelMatchesSerial) {
  ActionRegistry registry = builtin_registry();
  Lexicon lexicon = default_lexicon(registry);
  lexicon.remove_verbs_for("goal");
  auto [train, test] = generate(600, 0, 3, registry, default_templates(registry));
  Frontend frontend = [&](std::string_view u) {
    return translate(Utterance(std::string(u)), lexicon, registry);
  };
  EvalReport serial = evaluate(frontend, train, 1);
  for (unsigned threads : {2u, 4u, 16u}) {
    EvalReport parallel = evaluate(frontend, train, threads);
    EXPECT_EQ(format_report_lines(parallel), format_report_lines(serial));
    EXPECT_EQ(parallel.failures.size(), serial.failures.size());
  }
  EXPECT_EQ(serial.failures.size(), serial.total - serial.exact_matches);
  EXPECT_GT(serial.failures.size(), 0u);
  EXPECT_LT(serial.accuracy, 1.0);
}

TEST(Report, Formats) {
  EvalReport report = evaluate([](std::string_view) { return parse_logical_form("( seq ( goal ) )"); },
                               small_corpus());
  EXPECT_EQ(format_report_lines(report),
            "0\tmatch\t( seq ( goal ) )\t( seq ( goal ) )\n"
            "1\tmiss\t( seq ( say ( words ( $0 ( hi ) ) ) ) )\t( seq ( goal ) )\n"
            "2\tmiss\t( seq ( gate ) ( find ( val ( $0 ( buoy ) ) ) ) )\t( seq ( goal ) )\n");
  std::string table = format_report_table(report);
  EXPECT_EQ(table.rfind("pairs    3\nmatches  1\nmisses   2\n", 0), 0u);
  EXPECT_NE(table.find("\naccuracy 0.333\n"), std::string::npos);
}
