#include "valemo/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "valemo/error.hpp"

namespace valemo {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delimiter)) fields.push_back(trim(field));
  if (!line.empty() && line.back() == delimiter) fields.emplace_back();
  return fields;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<double> parse_number(const std::string& text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool skippable(const std::string& line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

double parse_unit_interval(const std::string& text, std::size_t line_no, const char* what) {
  auto value = parse_number(text);
  if (!value) throw ParseError(line_no, std::string("unparsable ") + what + " '" + text + "'");
  if (*value < 0.0 || *value > 1.0) throw ParseError(line_no, std::string(what) + " outside [0,1]");
  return *value;
}

// Shortest decimal form that parses back to the same double.
std::string format_number(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<EmotionLexiconEntry> parse_emotion_lexicon(std::istream& in) {
  std::vector<EmotionLexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (first_data_line) {
      first_data_line = false;
      if (!parse_number(fields[2])) continue;  // header
    }
    const double score = parse_unit_interval(fields[2], line_no, "score");
    auto emotion = lower(fields[1]);
    if (!is_known_emotion(emotion)) throw ParseError(line_no, "unknown emotion label '" + fields[1] + "'");
    if (fields[0].empty()) throw ParseError(line_no, "empty term");
    entries.push_back({lower(fields[0]), std::move(emotion), score});
  }
  return entries;
}

std::vector<ValueLexiconEntry> parse_value_lexicon(std::istream& in) {
  std::vector<ValueLexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 comma-separated fields, got " + std::to_string(fields.size()));
    }
    if (first_data_line) {
      first_data_line = false;
      if (!parse_number(fields[3])) continue;  // header
    }
    auto foundation = foundation_from_string(lower(fields[1]));
    if (!foundation) throw ParseError(line_no, "unknown foundation '" + fields[1] + "'");
    auto polarity = polarity_from_string(lower(fields[2]));
    if (!polarity) throw ParseError(line_no, "unknown polarity '" + fields[2] + "'");
    const double probability = parse_unit_interval(fields[3], line_no, "probability");
    if (fields[0].empty()) throw ParseError(line_no, "empty term");
    entries.push_back({lower(fields[0]), *foundation, *polarity, probability});
  }
  return entries;
}

std::string serialize_emotion_lexicon(const std::vector<EmotionLexiconEntry>& entries) {
  std::string out = "term\temotion\tscore\n";
  for (const auto& e : entries) out += e.term + "\t" + e.emotion + "\t" + format_number(e.score) + "\n";
  return out;
}

std::string serialize_value_lexicon(const std::vector<ValueLexiconEntry>& entries) {
  std::string out = "term,foundation,polarity,probability\n";
  for (const auto& e : entries) {
    out += e.term + "," + std::string(to_string(e.foundation)) + "," + std::string(to_string(e.polarity)) + "," +
           format_number(e.probability) + "\n";
  }
  return out;
}

double rescale_score(double score) {
  return std::max(kMinTypicality + score / 2.0, kMinTypicality + kRescaleEpsilon);
}

namespace {

struct Scored {
  std::string term;
  double score;
};

std::vector<TypicalFeature> top_k(std::vector<Scored> rows, std::size_t k) {
  std::sort(rows.begin(), rows.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  std::vector<TypicalFeature> out;
  for (const auto& row : rows) {
    if (out.size() == k) break;
    // A term listed twice keeps its best score.
    if (std::any_of(out.begin(), out.end(), [&](const TypicalFeature& f) { return f.term == row.term; })) continue;
    out.push_back({row.term, rescale_score(row.score), std::nullopt});
  }
  return out;
}

}  // namespace

Prototype build_emotion_prototype(const std::vector<EmotionLexiconEntry>& entries, const std::string& emotion,
                                  std::size_t k) {
  if (k == 0) throw DataError("prototype size k must be positive");
  std::vector<Scored> rows;
  for (const auto& e : entries) {
    if (e.emotion == emotion) rows.push_back({e.term, e.score});
  }
  if (rows.empty()) throw DataError("empty prototype: no lexicon entries for emotion '" + emotion + "'");
  return make_basic_prototype(emotion, PrototypeKind::emotion, {}, top_k(std::move(rows), k));
}

Prototype build_value_prototype(const std::vector<ValueLexiconEntry>& entries, Foundation foundation,
                                Polarity polarity, std::size_t k) {
  if (k == 0) throw DataError("prototype size k must be positive");
  const ValuePole pole{foundation, polarity};
  std::vector<Scored> rows;
  for (const auto& e : entries) {
    if (e.pole() == pole) rows.push_back({e.term, e.probability});
  }
  if (rows.empty()) throw DataError("empty prototype: no lexicon entries for value '" + std::string(pole.name()) + "'");
  return make_basic_prototype(std::string(pole.name()), PrototypeKind::value, {}, top_k(std::move(rows), k));
}

std::vector<ValueLexiconEntry> convert_multicolumn_value_lexicon(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> column;
  std::vector<ValueLexiconEntry> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split(line, ',');
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[lower(fields[i])] = i;
      if (!column.count("word")) throw ParseError(line_no, "missing 'word' column");
      for (auto f : kFoundations) {
        const std::string name(to_string(f));
        if (!column.count(name + "_p") || !column.count(name + "_sent")) {
          throw ParseError(line_no, "missing columns for foundation '" + name + "'");
        }
      }
      continue;
    }
    auto cell = [&](const std::string& name) -> const std::string& {
      const auto idx = column.at(name);
      if (idx >= fields.size()) throw ParseError(line_no, "missing value for column '" + name + "'");
      return fields[idx];
    };
    std::optional<Foundation> best;
    double best_p = -1.0;
    for (auto f : kFoundations) {
      const double p = parse_unit_interval(cell(std::string(to_string(f)) + "_p"), line_no, "probability");
      if (p > best_p) {
        best_p = p;
        best = f;
      }
    }
    const auto sentiment_text = cell(std::string(to_string(*best)) + "_sent");
    auto sentiment = parse_number(sentiment_text);
    if (!sentiment) throw ParseError(line_no, "unparsable sentiment '" + sentiment_text + "'");
    out.push_back({lower(cell("word")), *best, *sentiment < 0.0 ? Polarity::vice : Polarity::virtue, best_p});
  }
  return out;
}

}  // namespace valemo
