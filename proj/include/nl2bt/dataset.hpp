#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nl2bt/action_registry.hpp"

namespace nl2bt {

struct CorpusPair {
  std::string utterance;
  std::string logical_form;

  bool operator==(const CorpusPair&) const = default;
  auto operator<=>(const CorpusPair&) const = default;
};

enum class Split { Train, Test };

struct Corpus {
  std::vector<CorpusPair> pairs;
  Split split = Split::Train;
};

// One `utterance<TAB>logical form` record per line. Throws FormatError on a
// line without exactly one tab, or on a repeated pair.
Corpus read_tsv(std::string_view content, Split split = Split::Train);
std::string write_tsv(const Corpus& corpus);

struct VocabStats {
  std::size_t input = 0;   // distinct whitespace tokens over utterances
  std::size_t output = 0;  // ... and over logical forms

  bool operator==(const VocabStats&) const = default;
};

VocabStats vocab_stats(const Corpus& corpus);

// A surface template: literal words, `{param}` slots, and `[... {param}]`
// groups that appear only when their param is sampled.
struct Template {
  struct Part {
    std::vector<std::string> words;  // literal words, "{slot}" marks the slot
    std::string slot;                // empty for a literal word
    bool optional = false;
  };

  std::string action;
  std::vector<Part> parts;
};

using TemplateSet = std::vector<Template>;

// `action = template` lines, `#` comments. Throws ConfigParseError.
TemplateSet load_templates(std::string_view text, const ActionRegistry& registry);
std::string_view default_templates_text();
TemplateSet default_templates(const ActionRegistry& registry);

struct SlotPool {
  std::vector<std::string> values;
  std::size_t min_words = 1;
  std::size_t max_words = 1;
};

struct GeneratorOptions {
  // Relative weight of sequence lengths 1..7.
  std::array<unsigned, 7> length_weights{30, 25, 15, 10, 8, 7, 5};
  std::size_t min_optional = 1;
  std::size_t max_optional = 2;
  std::map<std::string, SlotPool, std::less<>> pools;  // keyed by param name
  std::vector<std::string> joiners;  // text placed between clauses
  // Force one sequence of every length with nonzero weight when the
  // requested total allows it.
  bool cover_all_lengths = true;
};

// Numbers -10.0 .. 10.0 in whole steps for numeric params, a noun list for
// obj/val, one or two words for say. Joiners match the default connectives.
GeneratorOptions default_generator_options();

// Distinct pairs, reproducible from `seed` on any platform. Train and test
// are disjoint at the pair level. Throws InsufficientSpace.
std::pair<Corpus, Corpus> generate(std::size_t n_train, std::size_t n_test,
                                   std::uint64_t seed, const ActionRegistry& registry,
                                   const TemplateSet& templates,
                                   const GeneratorOptions& options = default_generator_options());

}  // namespace nl2bt
