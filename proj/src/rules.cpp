#include "forge/tokenize/rules.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include <json.hpp>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::tokenize {

namespace {

using corpus::Token;

std::string_view action_name(RuleAction a) {
  switch (a) {
    case RuleAction::keep_together: return "keep_together";
    case RuleAction::split_at: return "split_at";
    case RuleAction::retag_hint: return "retag_hint";
  }
  return "keep_together";
}

RuleAction action_from_name(std::string_view s) {
  if (s == "keep_together") return RuleAction::keep_together;
  if (s == "split_at") return RuleAction::split_at;
  if (s == "retag_hint") return RuleAction::retag_hint;
  throw Error("rule-file", "unknown action: " + std::string(s));
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

std::vector<Token> apply_one(std::string_view text, const std::vector<std::size_t>& bytes,
                             std::vector<Token> tokens, const TokenRule& rule,
                             const std::regex& re) {
  std::vector<Token> out;
  out.reserve(tokens.size());

  auto slice = [&](std::size_t s, std::size_t e) {
    return std::string(text.substr(bytes[s], bytes[e] - bytes[s]));
  };

  switch (rule.action) {
    case RuleAction::keep_together: {
      std::size_t i = 0;
      while (i < tokens.size()) {
        // Longest window of text-contiguous tokens whose joined surface
        // fully matches. Merging across whitespace would break the
        // form == raw slice invariant, so gaps end the window.
        std::size_t best = i;
        std::size_t j = i;
        while (j + 1 < tokens.size() && tokens[j + 1].start == tokens[j].end) {
          ++j;
          if (std::regex_match(slice(tokens[i].start, tokens[j].end), re)) best = j;
        }
        if (best > i) {
          Token merged;
          merged.start = tokens[i].start;
          merged.end = tokens[best].end;
          merged.form = slice(merged.start, merged.end);
          merged.xpos = tokens[i].xpos;
          out.push_back(std::move(merged));
          i = best + 1;
        } else {
          out.push_back(std::move(tokens[i]));
          ++i;
        }
      }
      break;
    }
    case RuleAction::split_at: {
      for (auto& t : tokens) {
        if (!std::regex_match(t.form, re)) {
          out.push_back(std::move(t));
          continue;
        }
        const std::size_t len = t.end - t.start;
        std::vector<std::size_t> cuts = rule.offsets;
        std::sort(cuts.begin(), cuts.end());
        std::size_t prev = 0;
        for (std::size_t cut : cuts) {
          if (cut == prev || cut >= len)
            throw Error("rule", "rule '" + rule.id + "' would produce an empty token in '" +
                                    t.form + "'");
          Token part;
          part.start = t.start + prev;
          part.end = t.start + cut;
          part.form = slice(part.start, part.end);
          part.xpos = t.xpos;
          out.push_back(std::move(part));
          prev = cut;
        }
        Token tail;
        tail.start = t.start + prev;
        tail.end = t.end;
        tail.form = slice(tail.start, tail.end);
        tail.xpos = t.xpos;
        out.push_back(std::move(tail));
      }
      break;
    }
    case RuleAction::retag_hint: {
      for (auto& t : tokens) {
        if (std::regex_match(t.form, re)) t.xpos = rule.tag;
        out.push_back(std::move(t));
      }
      break;
    }
  }
  reindex(out);
  return out;
}

}  // namespace

std::vector<TokenRule> rules_from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw Error("rule-file", "rule file must be a JSON array");
  std::vector<TokenRule> rules;
  for (const auto& rj : j) {
    TokenRule r;
    r.id = rj.at("id").get<std::string>();
    if (rj.contains("genre")) {
      auto g = corpus::genre_from_string(rj.at("genre").get<std::string>());
      if (!g) throw Error("rule-file", "unknown genre in rule " + r.id);
      r.genre = *g;
    }
    r.pattern = rj.at("pattern").get<std::string>();
    r.action = action_from_name(rj.at("action").get<std::string>());
    if (rj.contains("offsets")) r.offsets = rj.at("offsets").get<std::vector<std::size_t>>();
    if (rj.contains("tag")) r.tag = rj.at("tag").get<std::string>();
    r.priority = rj.at("priority").get<int>();
    rules.push_back(std::move(r));
  }
  return rules;
}

std::string rules_to_json(const std::vector<TokenRule>& rules) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rules) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    if (r.genre) j["genre"] = std::string(to_string(*r.genre));
    j["pattern"] = r.pattern;
    j["action"] = std::string(action_name(r.action));
    if (!r.offsets.empty()) j["offsets"] = r.offsets;
    if (!r.tag.empty()) j["tag"] = r.tag;
    j["priority"] = r.priority;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<TokenRule> rules_for_genre(const std::vector<TokenRule>& rules, corpus::Genre genre) {
  std::vector<TokenRule> out;
  for (const auto& r : rules)
    if (!r.genre || *r.genre == genre) out.push_back(r);
  return out;
}

std::vector<corpus::Token> apply_rules(std::string_view text,
                                       const std::vector<corpus::Token>& tokens,
                                       const std::vector<TokenRule>& rules) {
  std::set<int> priorities;
  for (const auto& r : rules)
    if (!priorities.insert(r.priority).second)
      throw Error("rule-file", "duplicate priority " + std::to_string(r.priority));

  std::vector<const TokenRule*> ordered;
  ordered.reserve(rules.size());
  for (const auto& r : rules) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const TokenRule* a, const TokenRule* b) { return a->priority > b->priority; });

  const auto bytes = text::scalar_byte_starts(text);
  std::vector<corpus::Token> current = tokens;
  for (const TokenRule* r : ordered) {
    std::regex re;
    try {
      re = std::regex(r->pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw Error("rule-file", "rule '" + r->id + "': " + e.what());
    }
    current = apply_one(text, bytes, std::move(current), *r, re);
  }
  reindex(current);
  return current;
}

}  // namespace forge::tokenize
