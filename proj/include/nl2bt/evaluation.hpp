#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nl2bt/dataset.hpp"
#include "nl2bt/logical_form.hpp"

namespace nl2bt {

// Any utterance -> logical form function. May throw; a throw is a miss.
using Frontend = std::function<SequenceNode(std::string_view utterance)>;

struct EvalOutcome {
  std::size_t index = 0;
  bool match = false;
  std::string expected;  // canonical gold form (raw text if it does not parse)
  std::string produced;  // canonical prediction, or "error: ..." on failure
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t exact_matches = 0;
  double accuracy = 1.0;  // 1.0 for an empty corpus
  std::vector<EvalOutcome> failures;
  std::vector<EvalOutcome> outcomes;  // every pair, in corpus order
};

// Exact match on canonical renders. With threads > 1 the frontend is called
// concurrently and must be thread-safe; the report is in corpus order anyway.
EvalReport evaluate(const Frontend& frontend, const Corpus& corpus,
                    unsigned threads = 1);

// `index<TAB>match|miss<TAB>expected<TAB>produced`, one line per pair.
std::string format_report_lines(const EvalReport& report);

// Summary plus a table of misses, for people.
std::string format_report_table(const EvalReport& report);

}  // namespace nl2bt
