#include "valemo/text_pipeline.hpp"

#include <algorithm>
#include <cstdint>

#include "stopwords_data.hpp"
#include "valemo/error.hpp"
#include "valemo/hash.hpp"

namespace valemo {

nlohmann::json to_json(const CulturalItem& item) {
  nlohmann::json j{{"id", item.id}, {"title", item.title}, {"description", item.description}};
  if (item.source) j["source"] = *item.source;
  return j;
}

CulturalItem cultural_item_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError(0, "catalog item must be an object");
  try {
    CulturalItem item;
    item.id = j.at("id").get<std::string>();
    item.title = j.at("title").get<std::string>();
    item.description = j.at("description").get<std::string>();
    if (j.contains("source") && !j.at("source").is_null()) item.source = j.at("source").get<std::string>();
    if (item.id.empty()) throw ParseError(0, "catalog item has an empty id");
    return item;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed catalog item: ") + e.what());
  }
}

std::vector<CulturalItem> catalog_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError(0, "catalog must be a JSON array");
  std::vector<CulturalItem> items;
  for (const auto& entry : j) items.push_back(cultural_item_from_json(entry));
  return items;
}

std::vector<CulturalItem> parse_catalog(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("catalog is not valid JSON: ") + e.what());
  }
  return catalog_from_json(j);
}

// --- stopwords ---------------------------------------------------------------

std::string_view stopwords_text() { return detail::kStopwordsText; }

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = [] {
    std::set<std::string> out;
    std::string_view text = stopwords_text();
    while (!text.empty()) {
      const auto nl = text.find('\n');
      auto line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      out.emplace(line);
    }
    return out;
  }();
  return words;
}

const std::string& stopwords_hash() {
  static const std::string hash = sha256_hex(stopwords_text());
  return hash;
}

// --- tokenizer ---------------------------------------------------------------

namespace {

constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point starting at `i`, advancing `i`. Malformed
/// sequences yield U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++i;
    return kReplacement;
  }
  if (i + len > s.size()) {
    ++i;
    return kReplacement;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto c = static_cast<unsigned char>(s[i + k]);
    if ((c & 0xC0) != 0x80) {
      ++i;
      return kReplacement;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Letters of the scripts a museum catalog is likely to mix with English.
bool is_letter(char32_t c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c <= 0x24F) return c != 0xD7 && c != 0xF7;      // Latin-1 letters, Latin Extended-A/B
  if (c >= 0x386 && c <= 0x3FF) return c != 0x387;     // Greek
  if (c >= 0x400 && c <= 0x52F) return c < 0x482 || c > 0x489;  // Cyrillic
  if (c >= 0x5D0 && c <= 0x5EA) return true;           // Hebrew
  if (c >= 0x620 && c <= 0x64A) return true;           // Arabic
  if (c >= 0x1E00 && c <= 0x1EFF) return true;         // Latin Extended Additional
  if (c >= 0x4E00 && c <= 0x9FFF) return true;         // CJK unified ideographs
  return false;
}

// Simple one-to-one case folding for Latin, Greek and Cyrillic.
char32_t fold_case(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x17F) {
    // Latin Extended-A alternates upper/lower, with an odd-based run in the middle.
    const bool odd_based = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (odd_based) return (c % 2 == 1) ? c + 1 : c;
    if (c == 0x130 || c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) return c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0x1E00 && c <= 0x1EFF) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 37;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

bool has_vowel(std::string_view s) { return s.find_first_of("aeiouy") != std::string_view::npos; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Irregular forms and words the suffix rules would damage.
const std::map<std::string, std::string>& exceptions() {
  static const std::map<std::string, std::string> table = {
      {"men", "man"},           {"women", "woman"},     {"children", "child"},  {"people", "people"},
      {"feet", "foot"},         {"teeth", "tooth"},     {"mice", "mouse"},      {"geese", "goose"},
      {"lives", "life"},        {"knives", "knife"},    {"wives", "wife"},      {"wolves", "wolf"},
      {"leaves", "leaf"},       {"halves", "half"},     {"thieves", "thief"},   {"shelves", "shelf"},
      {"dies", "die"},          {"died", "die"},        {"dying", "die"},       {"lies", "lie"},
      {"lying", "lie"},         {"ties", "tie"},        {"series", "series"},   {"species", "species"},
      {"news", "news"},         {"arms", "arms"},       {"ruins", "ruin"},      {"was", "be"},
      {"were", "be"},           {"is", "be"},           {"are", "be"},          {"been", "be"},
      {"has", "have"},          {"had", "have"},        {"does", "do"},         {"did", "do"},
      {"went", "go"},           {"gone", "go"},         {"made", "make"},       {"took", "take"},
      {"taken", "take"},        {"gave", "give"},       {"given", "give"},      {"fought", "fight"},
      {"slew", "slay"},         {"slain", "slay"},      {"bore", "bear"},       {"borne", "bear"},
      {"built", "build"},       {"found", "find"},      {"brought", "bring"},   {"thought", "think"},
      {"sought", "seek"},       {"held", "hold"},       {"led", "lead"},        {"fell", "fall"},
      {"fallen", "fall"},       {"began", "begin"},     {"begun", "begin"},     {"ran", "run"},
      {"won", "win"},           {"lost", "lose"},       {"struck", "strike"},   {"stood", "stand"},
      {"known", "know"},        {"knew", "know"},       {"shown", "show"},      {"seen", "see"},
      {"saw", "see"},           {"wore", "wear"},       {"worn", "wear"},       {"thrown", "throw"},
      {"threw", "throw"},       {"kept", "keep"},       {"left", "left"},       {"red", "red"},
      {"bed", "bed"},           {"hundred", "hundred"}, {"sacred", "sacred"},   {"naked", "naked"},
      {"wicked", "wicked"},     {"ancient", "ancient"}, {"during", "during"},   {"thing", "thing"},
      {"nothing", "nothing"},   {"something", "something"}, {"everything", "everything"}, {"king", "king"},
      {"ring", "ring"},         {"wing", "wing"},       {"spring", "spring"},   {"string", "string"},
      {"ceiling", "ceiling"},   {"morning", "morning"}, {"evening", "evening"}, {"building", "building"},
      {"painting", "painting"}, {"molestation", "molestation"}, {"weapon", "weapon"}, {"weapons", "weapon"},
      {"brutality", "brutality"}, {"brutalities", "brutality"}, {"violently", "violently"},
      {"surprise", "surprise"}, {"surprised", "surprise"}, {"surprising", "surprise"},
      {"torture", "torture"},   {"tortured", "torture"}, {"torturing", "torture"}, {"tortures", "torture"},
      {"kill", "kill"},         {"kills", "kill"},      {"killed", "kill"},     {"killing", "kill"},
      {"this", "this"},         {"its", "its"},         {"us", "us"},           {"as", "as"},
      {"gas", "gas"},           {"bus", "bus"},         {"virus", "virus"},     {"status", "status"},
  };
  return table;
}

// Stems that regain a final 'e' once -ed / -ing is removed (us-ed -> use).
const std::set<std::string>& e_restoration() {
  static const std::set<std::string> stems = {
      "us",     "caus",   "mak",    "tak",    "giv",    "liv",     "mov",     "prov",    "surpris", "tortur",
      "captur", "forc",   "plac",   "ris",    "rais",   "receiv",  "believ",  "serv",    "sav",     "stor",
      "shap",   "decorat", "creat", "locat",  "rul",    "engrav",  "carv",    "describ", "produc",
      "includ", "declar", "escap",  "settl",  "pierc",  "wag",     "invad",   "enslav",  "abus",
      "chas",   "pursu",  "argu",   "continu", "issu",  "glaz",    "fir",     "hop",     "wav",     "danc",
      "judg",   "chang",  "arrang", "manag",  "rescu",  "violat",  "desecrat", "sacrific", "celebrat", "dedicat",
      "writ",   "bak",    "shar",   "compar", "prepar", "measur",  "excavat", "restor",  "requir",  "combin",
  };
  return stems;
}

bool doubled_consonant(std::string_view stem) {
  if (stem.size() < 3) return false;
  const char a = stem[stem.size() - 1];
  const char b = stem[stem.size() - 2];
  return a == b && std::string_view("aeiouylsz").find(a) == std::string_view::npos;
}

std::optional<std::string> strip_verb_suffix(std::string_view word, std::string_view suffix) {
  if (!ends_with(word, suffix)) return std::nullopt;
  if (suffix == "ed" && ends_with(word, "eed")) return std::nullopt;
  std::string stem(word.substr(0, word.size() - suffix.size()));
  if (e_restoration().count(stem)) return stem + "e";
  if (stem.size() < 3 || !has_vowel(stem)) return std::nullopt;
  if (doubled_consonant(stem)) stem.pop_back();
  return stem;
}

/// One application of the first matching rule; nullopt when none applies.
std::optional<std::string> apply_rule(std::string_view word) {
  if (auto it = exceptions().find(std::string(word)); it != exceptions().end()) {
    if (it->second == word) return std::nullopt;
    return it->second;
  }
  if (ends_with(word, "ies") && word.size() >= 5) return std::string(word.substr(0, word.size() - 3)) + "y";
  if (ends_with(word, "sses")) return std::string(word.substr(0, word.size() - 2));
  if (ends_with(word, "s")) {
    if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is")) return std::nullopt;
    if (word.size() < 4) return std::nullopt;
    return std::string(word.substr(0, word.size() - 1));
  }
  if (auto stem = strip_verb_suffix(word, "ing")) return stem;
  if (auto stem = strip_verb_suffix(word, "ed")) return stem;
  return std::nullopt;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t letters = 0;
  auto flush = [&] {
    if (letters >= 2) tokens.push_back(current);
    current.clear();
    letters = 0;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = next_code_point(text, i);
    if (is_letter(cp)) {
      append_utf8(current, fold_case(cp));
      ++letters;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string lemma_of(std::string_view token) {
  std::string word(token);
  // Every rule shortens the word or lands on an exception target, so this terminates.
  for (int guard = 0; guard < 16; ++guard) {
    auto next = apply_rule(word);
    if (!next || *next == word) break;
    word = std::move(*next);
  }
  return word;
}

std::vector<std::string> lemmatize(std::string_view text) {
  std::vector<std::string> lemmas;
  const auto& stop = stopwords();
  for (const auto& token : tokenize(text)) {
    if (stop.count(token)) continue;
    auto lemma = lemma_of(token);
    if (stop.count(lemma) || lemma.size() < 2) continue;
    lemmas.push_back(std::move(lemma));
  }
  return lemmas;
}

FeatureProfile profile_from_lemmas(std::string item_id, const std::vector<std::string>& lemmas) {
  if (lemmas.empty()) throw DataError("empty profile");
  FeatureProfile profile;
  profile.item_id = std::move(item_id);
  profile.token_count = lemmas.size();
  std::map<std::string, std::size_t> counts;
  for (const auto& l : lemmas) ++counts[l];
  const auto total = static_cast<double>(lemmas.size());
  for (const auto& [lemma, count] : counts) profile.frequencies[lemma] = static_cast<double>(count) / total;
  return profile;
}

FeatureProfile extract_feature_profile(const CulturalItem& item) {
  return profile_from_lemmas(item.id, lemmatize(item.description));
}

const std::map<std::string, std::string>& lemma_exceptions() { return exceptions(); }

}  // namespace valemo
