#include <gtest/gtest.h>

#include <json.hpp>

#include "kannudi/script.hpp"
#include "kannudi/session.hpp"
#include "support.hpp"

using namespace kannudi;
using nlohmann::json;

namespace {

const KeyEvent& key_of(const ScriptStep& s) { return std::get<KeyEvent>(s.input); }

json request(Session& s, const std::string& text) { return json_bridge::handle_request(s, json::parse(text)); }

}  // namespace

TEST(Script, LettersHoldsAndLabels) {
  const auto steps = parse_script("s+ t+ r I");
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_EQ(steps[0].label, "s+");
  EXPECT_TRUE(key_of(steps[0]).hold);
  EXPECT_FALSE(key_of(steps[2]).hold);
  EXPECT_EQ(key_of(steps[3]).base, U'I');
  EXPECT_EQ(steps[3].column, 9u);
}

TEST(Script, SuperscriptPlusAndNoSeparators) {
  const auto steps = parse_script("kn⁺w");
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_EQ(steps[1].label, "n+");
  EXPECT_TRUE(key_of(steps[1]).hold);
}

TEST(Script, SpecialsDigitsAndComments) {
  const auto steps = parse_script("# greeting\nk <SP> 4 <C-BS> <LEFT>  # done\n<ZWNJ>");
  ASSERT_EQ(steps.size(), 6u);
  EXPECT_EQ(steps[0].line, 2u);
  EXPECT_EQ(key_of(steps[1]).base, U' ');
  EXPECT_EQ(key_of(steps[2]).base, U'4');
  EXPECT_EQ(key_of(steps[3]).modifier, Modifier::Ctrl);
  EXPECT_EQ(std::get<CursorMotion>(steps[4].input), CursorMotion::Left);
  EXPECT_EQ(key_of(steps[5]).base, codepoint::kZwnj);
  EXPECT_EQ(steps[5].line, 3u);
  EXPECT_EQ(steps[5].column, 1u);
}

TEST(Script, ErrorsCarryPosition) {
  try {
    parse_script("k a\n  % f");
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_EQ(std::string(e.what()).rfind("2:3: ", 0), 0u);
  }
  EXPECT_THROW(parse_script("<FOO>"), ScriptError);
  EXPECT_THROW(parse_script("<BS"), ScriptError);
  EXPECT_THROW(parse_script("\xff"), ScriptError);
}

TEST(Script, EmptyScript) {
  EXPECT_TRUE(parse_script("").empty());
  EXPECT_TRUE(parse_script("  # nothing\n").empty());
}

TEST(Session, ConfigToggleKeepsExistingText) {
  Session s(kt::config(), default_layout());
  for (const auto& step : parse_script("k f k")) s.step(step.input);
  EXPECT_EQ(s.text(), "ಕ್ಕ");
  s.set_config(kt::config(DefaultVowel::Null, OhokMode::SvaOttu));
  EXPECT_EQ(s.text(), "ಕ್ಕ");
  for (const auto& step : parse_script("<SP> k+ a")) s.step(step.input);
  EXPECT_EQ(s.text(), "ಕ್ಕ ಕ್ಕ");
}

TEST(Session, ResetClearsBuffer) {
  Session s = kt::run("k a n");
  s.reset();
  EXPECT_EQ(s.text(), "");
  EXPECT_TRUE(s.last_notices().empty());
}

TEST(Bridge, KeyRequests) {
  Session s(kt::config(), default_layout());
  request(s, R"({"key":"k"})");
  request(s, R"({"key":"n","hold":true})");
  EXPECT_EQ(s.text(), "ಕನ");  // a hold in Off mode is a tap
  s.set_config(kt::config(DefaultVowel::InherentA, OhokMode::SvaOttu));
  s.reset();
  request(s, R"({"key":"k"})");
  request(s, R"({"key":"n","hold":true})");
  const json state = request(s, R"({"key":"w"})");
  EXPECT_EQ(state["text"], "ಕನ್ನಡ");
  EXPECT_EQ(state["cursor"], 5);
  ASSERT_EQ(state["syllables"].size(), 3u);
  EXPECT_EQ(state["syllables"][1]["text"], "ನ್ನ");
  EXPECT_EQ(state["syllables"][1]["begin"], 1);
  EXPECT_EQ(state["syllables"][1]["end"], 4);
  EXPECT_EQ(state["current_syllable"], 2);
  EXPECT_TRUE(state["pending_hold"].is_null());
}

TEST(Bridge, ShiftBackspaceAndMotion) {
  Session s(kt::config(), default_layout());
  for (const char* r : {R"({"key":"k"})", R"({"key":"i","shift":true})", R"({"key":"g"})"}) request(s, r);
  EXPECT_EQ(s.text(), "ಕೀಗ");
  json state = request(s, R"({"motion":"left"})");
  EXPECT_EQ(state["cursor"], 2);
  EXPECT_EQ(state["current_syllable"], 0);
  state = request(s, R"({"key":"Backspace","modifier":"shift"})");
  EXPECT_EQ(state["text"], "ಗ");
  state = request(s, R"({"key":"Space"})");
  EXPECT_EQ(state["text"], " ಗ");
}

TEST(Bridge, NoticesAndPendingHold) {
  Session s(kt::config(DefaultVowel::InherentA, OhokMode::Kandante), default_layout());
  json state = request(s, R"({"key":"k","hold":true})");
  ASSERT_EQ(state["notices"].size(), 1u);
  EXPECT_EQ(state["notices"][0]["kind"], "KandanteUnattached");
  EXPECT_FALSE(state["notices"][0]["blocked"].get<bool>());
  request(s, R"({"reset":true})");
  request(s, R"({"key":"k"})");
  request(s, R"({"key":"a"})");
  state = request(s, R"({"key":"i"})");
  EXPECT_EQ(state["notices"][0]["kind"], "NonInitialVowel");
  EXPECT_TRUE(state["notices"][0]["blocked"].get<bool>());
  request(s, R"({"reset":true})");
  request(s, R"({"key":"a"})");
  state = request(s, R"({"key":"k","hold":true})");
  EXPECT_EQ(state["text"], "ಅಕ್ಕ");
  EXPECT_EQ(state["pending_hold"], "ka");
}

TEST(Bridge, ConfigRoundTrip) {
  Session s(kt::config(), default_layout());
  const json state = request(s, R"({"config":{"default_vowel":"null","mode":"ao","ascii_digits":true}})");
  EXPECT_EQ(state["config"]["default_vowel"], "null");
  EXPECT_EQ(state["config"]["mode"], "ao");
  EXPECT_TRUE(state["config"]["shunyification"].get<bool>());
  EXPECT_EQ(s.config().numerals, Numerals::Ascii);
  EXPECT_EQ(json_bridge::config_from_json(json_bridge::config_to_json(s.config())).ohok_mode, OhokMode::Andante);
  request(s, R"({"key":"7"})");
  EXPECT_EQ(s.text(), "7");
}

TEST(Bridge, RejectsBadRequests) {
  Session s(kt::config(), default_layout());
  EXPECT_THROW(request(s, R"({"foo":1})"), std::invalid_argument);
  EXPECT_THROW(request(s, R"({"key":"kk"})"), std::invalid_argument);
  EXPECT_THROW(request(s, R"({"motion":"up"})"), std::invalid_argument);
  EXPECT_THROW(request(s, R"({"config":{"mode":"fast"}})"), std::invalid_argument);
  EXPECT_EQ(request(s, R"({"state":true})")["text"], "");
}
