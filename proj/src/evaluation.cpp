#include "nl2bt/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

namespace nl2bt {
namespace {

EvalOutcome score(const Frontend& frontend, const CorpusPair& pair, std::size_t index) {
  EvalOutcome outcome;
  outcome.index = index;
  try {
    outcome.expected = canonicalize(pair.logical_form);
  } catch (const ParseError&) {
    outcome.expected = pair.logical_form;
  }
  try {
    outcome.produced = render(frontend(pair.utterance));
    outcome.match = outcome.produced == outcome.expected;
  } catch (const std::exception& e) {
    outcome.produced = std::string("error: ") + e.what();
  }
  return outcome;
}

std::string fixed3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

}  // namespace

EvalReport evaluate(const Frontend& frontend, const Corpus& corpus, unsigned threads) {
  const std::size_t n = corpus.pairs.size();
  std::vector<EvalOutcome> outcomes(n);

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) outcomes[i] = score(frontend, corpus.pairs[i], i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          outcomes[i] = score(frontend, corpus.pairs[i], i);
        }
      });
    }
  }

  EvalReport report;
  report.total = n;
  for (const EvalOutcome& outcome : outcomes) {
    if (outcome.match) {
      ++report.exact_matches;
    } else {
      report.failures.push_back(outcome);
    }
  }
  report.accuracy = n == 0 ? 1.0 : static_cast<double>(report.exact_matches) / static_cast<double>(n);
  report.outcomes = std::move(outcomes);
  return report;
}

std::string format_report_lines(const EvalReport& report) {
  std::string out;
  for (const EvalOutcome& o : report.outcomes) {
    out += std::to_string(o.index);
    out += o.match ? "\tmatch\t" : "\tmiss\t";
    out += o.expected;
    out += '\t';
    out += o.produced;
    out += '\n';
  }
  return out;
}

std::string format_report_table(const EvalReport& report) {
  std::string out;
  out += "pairs    " + std::to_string(report.total) + "\n";
  out += "matches  " + std::to_string(report.exact_matches) + "\n";
  out += "misses   " + std::to_string(report.failures.size()) + "\n";
  if (!report.failures.empty()) {
    out += "\nindex  expected | produced\n";
    for (const EvalOutcome& o : report.failures) {
      std::string index = std::to_string(o.index);
      out += index + std::string(index.size() < 7 ? 7 - index.size() : 1, ' ');
      out += o.expected + "\n       " + o.produced + "\n";
    }
    out += "\n";
  }
  out += "accuracy " + fixed3(report.accuracy) + "\n";
  return out;
}

}  // namespace nl2bt
