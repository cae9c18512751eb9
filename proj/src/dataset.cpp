#include "nl2bt/dataset.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "nl2bt/logical_form.hpp"
#include "text_util.hpp"

namespace nl2bt {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Portable draws: std::uniform_int_distribution differs between standard
// libraries, mt19937_64's raw output does not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = kSaturated - kSaturated % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

bool is_slot_word(std::string_view word) {
  return word.size() > 2 && word.front() == '{' && word.back() == '}';
}

std::string_view slot_name(std::string_view word) { return word.substr(1, word.size() - 2); }

const SlotPool& pool_for(const GeneratorOptions& options, const std::string& slot) {
  auto it = options.pools.find(slot);
  if (it == options.pools.end() || it->second.values.empty()) {
    throw std::invalid_argument("no value pool for slot '" + slot + "'");
  }
  return it->second;
}

std::uint64_t pool_size(const SlotPool& pool) {
  std::uint64_t total = 0;
  for (std::size_t w = pool.min_words; w <= pool.max_words; ++w) {
    std::uint64_t ways = 1;
    for (std::size_t i = 0; i < w; ++i) ways = sat_mul(ways, pool.values.size());
    total = sat_add(total, ways);
  }
  return total;
}

// Distinct (utterance, form) outcomes of one template.
std::uint64_t template_space(const Template& t, const GeneratorOptions& options) {
  std::uint64_t required = 1;
  std::vector<std::uint64_t> optional;
  for (const Template::Part& part : t.parts) {
    if (part.slot.empty()) continue;
    std::uint64_t n = pool_size(pool_for(options, part.slot));
    if (part.optional) {
      optional.push_back(n);
    } else {
      required = sat_mul(required, n);
    }
  }
  // Elementary symmetric sums: ways[k] = choices using exactly k groups.
  std::vector<std::uint64_t> ways(optional.size() + 1, 0);
  ways[0] = 1;
  for (std::uint64_t n : optional) {
    for (std::size_t k = ways.size() - 1; k > 0; --k) {
      ways[k] = sat_add(ways[k], sat_mul(ways[k - 1], n));
    }
  }
  std::uint64_t chosen = 0;
  const std::size_t lo = std::min(options.min_optional, optional.size());
  const std::size_t hi = std::min(options.max_optional, optional.size());
  for (std::size_t k = lo; k <= hi; ++k) chosen = sat_add(chosen, ways[k]);
  return sat_mul(required, chosen);
}

struct Clause {
  std::string text;
  ActionNode action;
};

class SequenceSampler {
 public:
  SequenceSampler(const TemplateSet& templates, const GeneratorOptions& options,
                  std::uint64_t seed)
      : options_(options), rng_(seed) {
    for (const Template& t : templates) by_action_[t.action].push_back(&t);
    for (const auto& [action, list] : by_action_) actions_.push_back(action);
    for (unsigned w : options.length_weights) weight_total_ += w;
    if (actions_.empty()) throw std::invalid_argument("no templates to generate from");
    if (weight_total_ == 0) throw std::invalid_argument("all length weights are zero");
    if (options.joiners.empty()) throw std::invalid_argument("no clause joiners");
  }

  std::size_t sample_length() {
    std::uint64_t r = rng_.below(weight_total_);
    for (std::size_t i = 0; i < options_.length_weights.size(); ++i) {
      if (r < options_.length_weights[i]) return i + 1;
      r -= options_.length_weights[i];
    }
    return options_.length_weights.size();
  }

  CorpusPair sample(std::size_t length) {
    SequenceNode tree;
    std::string utterance;
    for (std::size_t i = 0; i < length; ++i) {
      Clause clause = sample_clause(*rng_.pick(by_action_.at(rng_.pick(actions_))));
      if (i) utterance += rng_.pick(options_.joiners);
      utterance += clause.text;
      tree.actions.push_back(std::move(clause.action));
    }
    return {utterance, render(tree)};
  }

  std::uint64_t space() const {
    std::uint64_t per_clause = 0;
    for (const auto& [action, list] : by_action_) {
      for (const Template* t : list) per_clause = sat_add(per_clause, template_space(*t, options_));
    }
    std::uint64_t total = 0;
    std::uint64_t sequences = 1;
    for (std::size_t len = 1; len <= options_.length_weights.size(); ++len) {
      sequences = sat_mul(sequences, per_clause);
      if (len > 1) sequences = sat_mul(sequences, options_.joiners.size());
      if (options_.length_weights[len - 1] > 0) total = sat_add(total, sequences);
    }
    return total;
  }

 private:
  std::string sample_value(const std::string& slot) {
    const SlotPool& pool = pool_for(options_, slot);
    std::size_t count = pool.min_words + rng_.below(pool.max_words - pool.min_words + 1);
    std::vector<std::string> words;
    for (std::size_t i = 0; i < count; ++i) words.push_back(rng_.pick(pool.values));
    return detail::join(words);
  }

  Clause sample_clause(const Template& t) {
    std::vector<std::size_t> groups;
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
      if (t.parts[i].optional) groups.push_back(i);
    }
    const std::size_t lo = std::min(options_.min_optional, groups.size());
    const std::size_t hi = std::min(options_.max_optional, groups.size());
    const std::size_t keep = lo + rng_.below(hi - lo + 1);
    // Partial Fisher-Yates; kept groups stay in template order.
    for (std::size_t i = 0; i < keep; ++i) {
      std::swap(groups[i], groups[i + rng_.below(groups.size() - i)]);
    }
    std::set<std::size_t> kept(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(keep));

    Clause clause;
    clause.action.name = t.action;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
      const Template::Part& part = t.parts[i];
      if (part.optional && !kept.count(i)) continue;
      for (const std::string& word : part.words) {
        if (is_slot_word(word)) {
          std::string value = sample_value(part.slot);
          clause.action.params.push_back({part.slot, 0, value});
          words.push_back(std::move(value));
        } else {
          words.push_back(word);
        }
      }
    }
    clause.text = detail::join(words);
    return clause;
  }

  const GeneratorOptions& options_;
  Rng rng_;
  std::map<std::string, std::vector<const Template*>> by_action_;
  std::vector<std::string> actions_;
  std::uint64_t weight_total_ = 0;
};

}  // namespace

Corpus read_tsv(std::string_view content, Split split) {
  Corpus corpus;
  corpus.split = split;
  std::set<CorpusPair> seen;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(content)) {
    ++line_no;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw FormatError(line_no, "missing tab");
    if (line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError(line_no, "more than one tab");
    }
    CorpusPair pair{std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))};
    if (!seen.insert(pair).second) throw FormatError(line_no, "duplicate pair");
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

std::string write_tsv(const Corpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const CorpusPair& pair = corpus.pairs[i];
    for (const std::string* field : {&pair.utterance, &pair.logical_form}) {
      if (field->find_first_of("\t\r\n") != std::string::npos) {
        throw FormatError(i + 1, "field contains a tab or line break");
      }
    }
    out += pair.utterance;
    out += '\t';
    out += pair.logical_form;
    out += '\n';
  }
  return out;
}

VocabStats vocab_stats(const Corpus& corpus) {
  std::set<std::string, std::less<>> input;
  std::set<std::string, std::less<>> output;
  for (const CorpusPair& pair : corpus.pairs) {
    for (std::string& w : detail::split_words(pair.utterance)) input.insert(std::move(w));
    for (std::string& w : detail::split_words(pair.logical_form)) output.insert(std::move(w));
  }
  return {input.size(), output.size()};
}

TemplateSet load_templates(std::string_view text, const ActionRegistry& registry) {
  TemplateSet templates;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigParseError(line_no, "expected 'action = template'");

    Template t;
    t.action = std::string(detail::trim(line.substr(0, eq)));
    const ActionSchema* schema = registry.lookup(t.action);
    if (!schema) throw ConfigParseError(line_no, "unknown action '" + t.action + "'");

    std::set<std::string> slots;
    bool in_group = false;
    for (std::string word : detail::split_words(line.substr(eq + 1))) {
      bool opens = word.front() == '[';
      bool closes = word.back() == ']';
      if (opens) word.erase(0, 1);
      if (closes && !word.empty()) word.pop_back();
      if (opens) {
        if (in_group) throw ConfigParseError(line_no, "nested '['");
        in_group = true;
        t.parts.push_back({{}, "", true});
      }
      if (word.empty()) throw ConfigParseError(line_no, "empty template word");
      if (!in_group) t.parts.push_back({{}, "", false});
      Template::Part& part = t.parts.back();
      part.words.push_back(word);
      if (!is_slot_word(word) && word.find_first_of("{}") != std::string::npos) {
        throw ConfigParseError(line_no, "malformed slot '" + word + "'");
      }
      if (is_slot_word(word)) {
        std::string slot(slot_name(word));
        if (!part.slot.empty()) throw ConfigParseError(line_no, "two slots in one group");
        if (!schema->resolve(slot)) {
          throw ConfigParseError(line_no, "action '" + t.action + "' has no param '" + slot + "'");
        }
        if (!slots.insert(slot).second) {
          throw ConfigParseError(line_no, "slot {" + slot + "} used twice");
        }
        part.slot = std::move(slot);
      }
      if (closes) {
        if (!in_group) throw ConfigParseError(line_no, "unmatched ']'");
        if (part.slot.empty()) throw ConfigParseError(line_no, "optional group without a slot");
        in_group = false;
      }
    }
    if (in_group) throw ConfigParseError(line_no, "unterminated '['");
    if (t.parts.empty()) throw ConfigParseError(line_no, "empty template");
    templates.push_back(std::move(t));
  }
  return templates;
}

TemplateSet default_templates(const ActionRegistry& registry) {
  return load_templates(default_templates_text(), registry);
}

GeneratorOptions default_generator_options() {
  GeneratorOptions options;
  SlotPool numbers;
  for (int v = -10; v <= 10; ++v) numbers.values.push_back(std::to_string(v) + ".0");
  for (const char* param : {"x", "y", "z", "roll", "pitch", "raw", "yaw", "num"}) {
    options.pools[param] = numbers;
  }
  SlotPool nouns{{"buoy", "wrench", "hammer", "hull", "torpedo", "marker", "bin", "lever"}, 1, 1};
  options.pools["obj"] = nouns;
  options.pools["val"] = nouns;
  options.pools["words"] = {
      {"hello", "ready", "done", "standby", "copy", "roger", "affirmative", "surfacing"}, 1, 2};
  options.joiners = {" then ", " and then ", " after that ", ", ", " and "};
  return options;
}

std::pair<Corpus, Corpus> generate(std::size_t n_train, std::size_t n_test,
                                   std::uint64_t seed, const ActionRegistry& registry,
                                   const TemplateSet& templates,
                                   const GeneratorOptions& options) {
  Corpus train{{}, Split::Train};
  Corpus test{{}, Split::Test};
  const std::size_t total = n_train + n_test;
  if (total == 0) return {train, test};

  for (const Template& t : templates) {
    if (!registry.lookup(t.action)) {
      throw std::invalid_argument("template for unknown action '" + t.action + "'");
    }
  }

  if (templates.empty()) {
    throw InsufficientSpace("requested " + std::to_string(total) + " pairs but there are no templates");
  }
  SequenceSampler sampler(templates, options, seed);
  if (sampler.space() < total) {
    throw InsufficientSpace("requested " + std::to_string(total) + " pairs but only " +
                            std::to_string(sampler.space()) + " distinct pairs exist");
  }

  std::vector<std::size_t> forced;
  if (options.cover_all_lengths) {
    for (std::size_t len = 1; len <= options.length_weights.size(); ++len) {
      if (options.length_weights[len - 1] > 0) forced.push_back(len);
    }
    if (forced.size() > total) forced.clear();
  }

  std::set<CorpusPair> seen;
  std::vector<CorpusPair> pairs;
  const std::size_t max_attempts = total * 1000 + 100000;
  for (std::size_t attempt = 0; pairs.size() < total; ++attempt) {
    if (attempt >= max_attempts) {
      throw InsufficientSpace("gave up after " + std::to_string(attempt) +
                              " draws with " + std::to_string(pairs.size()) + " distinct pairs");
    }
    const std::size_t length =
        pairs.size() < forced.size() ? forced[pairs.size()] : sampler.sample_length();
    CorpusPair pair = sampler.sample(length);
    if (seen.insert(pair).second) pairs.push_back(std::move(pair));
  }

  train.pairs.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(n_train));
  test.pairs.assign(pairs.begin() + static_cast<std::ptrdiff_t>(n_train), pairs.end());
  return {train, test};
}

}  // namespace nl2bt
