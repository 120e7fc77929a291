#include "valemo/moral_mapping.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "valemo/error.hpp"

using namespace valemo;

namespace {

// Hand transcription of the mapping table: emotion | value poles | mapped emotions.
struct Row {
  const char* emotion;
  std::vector<const char*> values;
  std::vector<const char*> mapped;
};

const std::vector<Row>& expected_rows() {
  static const std::vector<Row> rows{
      {"Admiration", {"authority"}, {"awe"}},
      {"Anger", {"cheating"}, {"anger"}},
      {"Compassion", {"harm"}, {"grief", "sadness", "pensiveness"}},
      {"Contempt", {"betrayal", "cheating"}, {"disapproval"}},
      {"Disgust", {"degradation"}, {"disgust", "loathing"}},
      {"Embarrassment", {"cheating"}, {"annoyance"}},
      {"Evaluation", {"sanctity"}, {"awe"}},
      {"Fear", {"subversion"}, {"terror"}},
      {"Gratitude", {"fairness"}, {"vigilance", "anticipation", "interest"}},
      {"Guilt", {"cheating"}, {"remorse"}},
      {"Pity", {"harm"}, {"grief", "sadness", "pensiveness"}},
      {"Pride", {"loyalty"}, {"admiration", "trust", "acceptance"}},
      {"Rage", {"betrayal"}, {"rage"}},
      {"Remorse", {"harm"}, {"grief", "sadness"}},
      {"Reproach", {"betrayal"}, {"aggressiveness"}},
      {"Respect", {"authority"}, {"submission", "fear"}},
      {"Shame", {"betrayal"}, {"remorse"}},
  };
  return rows;
}

std::vector<std::string> names(const std::vector<ValuePole>& poles) {
  std::vector<std::string> out;
  for (auto p : poles) out.emplace_back(p.name());
  return out;
}

}  // namespace

TEST_CASE("the table has all 17 rows") {
  const auto& rows = moral_mapping_rows();
  REQUIRE(rows.size() == expected_rows().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& want = expected_rows()[i];
    CAPTURE(want.emotion);
    CHECK(rows[i].moral_emotion == want.emotion);
    CHECK(names(rows[i].value_poles) == std::vector<std::string>(want.values.begin(), want.values.end()));
    std::vector<std::string> mapped(rows[i].plutchik_emotions.begin(), rows[i].plutchik_emotions.end());
    CHECK(mapped == std::vector<std::string>(want.mapped.begin(), want.mapped.end()));
  }
}

TEST_CASE("value_poles_for_moral_emotion") {
  CHECK(value_poles_for_moral_emotion("Fear") == std::vector<ValuePole>{{Foundation::authority, Polarity::vice}});
  CHECK(value_poles_for_moral_emotion("fear") == value_poles_for_moral_emotion("Fear"));
  CHECK(value_poles_for_moral_emotion("Contempt") ==
        std::vector<ValuePole>{{Foundation::loyalty, Polarity::vice}, {Foundation::fairness, Polarity::vice}});
  CHECK_THROWS_AS(value_poles_for_moral_emotion("Joyfulness"), NotFoundError);
}

TEST_CASE("plutchik_for_value_pole") {
  CHECK(plutchik_for_value_pole({Foundation::loyalty, Polarity::virtue}) ==
        std::vector<std::string>{"admiration", "trust", "acceptance"});
  CHECK(plutchik_for_value_pole({Foundation::sanctity, Polarity::vice}) ==
        std::vector<std::string>{"disgust", "loathing"});
  CHECK(plutchik_for_value_pole({Foundation::care, Polarity::virtue}).empty());
  CHECK(plutchik_for_value_pole({Foundation::care, Polarity::vice}) ==
        std::vector<std::string>{"grief", "sadness", "pensiveness"});
  CHECK(plutchik_for_value_pole({Foundation::authority, Polarity::vice}) == std::vector<std::string>{"terror"});
}

TEST_CASE("every row round-trips through all three lookups") {
  for (const auto& row : moral_mapping_rows()) {
    CAPTURE(row.moral_emotion);
    CHECK(value_poles_for_moral_emotion(row.moral_emotion) == row.value_poles);
    for (auto pole : row.value_poles) {
      CHECK(value_pole_from_name(pole.name()) == pole);
      const auto mapped = plutchik_for_value_pole(pole);
      for (auto e : row.plutchik_emotions) {
        CHECK(std::find(mapped.begin(), mapped.end(), std::string(e)) != mapped.end());
        CHECK(is_known_emotion(e));
      }
    }
  }
}

TEST_CASE("value poles and their names") {
  CHECK(all_value_poles().size() == 10);
  std::set<std::string> seen;
  for (auto p : all_value_poles()) seen.insert(std::string(p.name()));
  CHECK(seen == std::set<std::string>{"care", "harm", "fairness", "cheating", "loyalty", "betrayal", "authority",
                                      "subversion", "sanctity", "degradation"});
  CHECK(opposite_value_pole({Foundation::sanctity, Polarity::vice}) == ValuePole{Foundation::sanctity, Polarity::virtue});
  CHECK(opposite_value_pole({Foundation::care, Polarity::virtue}).name() == "harm");
  for (auto p : all_value_poles()) CHECK(opposite_value_pole(opposite_value_pole(p)) == p);
  CHECK_FALSE(value_pole_from_name("courage").has_value());
  CHECK(foundation_from_string("sanctity") == Foundation::sanctity);
  CHECK(polarity_from_string("vice") == Polarity::vice);
}

TEST_CASE("emotion wheel oppositions") {
  CHECK(opposite_emotion("disgust") == "trust");
  CHECK(opposite_emotion("anticipation") == "surprise");
  CHECK(opposite_emotion("joy") == "sadness");
  CHECK(opposite_emotion("fear") == "anger");
  CHECK_THROWS_AS(opposite_emotion("awe"), NotFoundError);
  for (auto e : basic_emotions()) CHECK(opposite_emotion(opposite_emotion(e)) == e);
  CHECK(basic_emotions().size() == 8);
  CHECK(emotion_vocabulary().size() == 32);
  CHECK(is_basic_emotion("trust"));
  CHECK_FALSE(is_basic_emotion("awe"));
  CHECK(basic_components("terror") == std::vector<std::string>{"fear"});
  CHECK(basic_components("joyfulness").empty());
  CHECK(emotions_opposed("disgust", "admiration"));
  CHECK(emotions_opposed("admiration", "disgust"));
  CHECK_FALSE(emotions_opposed("disgust", "loathing"));
}

TEST_CASE("default opposition table") {
  const auto t = default_opposition_table();
  CHECK(t.size() == 9);
  CHECK(t.opposed("joy", "sadness"));
  CHECK(t.opposed("sanctity", "degradation"));
  CHECK(t.opposed("harm", "care"));
  CHECK(validate_prototypes({}, t).empty());
}

TEST_CASE("mapping JSON export") {
  const auto j = mapping_to_json();
  REQUIRE(j.size() == 17);
  CHECK(j[7].at("moral_emotion") == "Fear");
  CHECK(j[7].at("values")[0].at("name") == "subversion");
  CHECK(j[7].at("values")[0].at("foundation") == "authority");
  CHECK(j[7].at("values")[0].at("polarity") == "vice");
  CHECK(j[7].at("mapped_emotions") == nlohmann::json{"terror"});
}
