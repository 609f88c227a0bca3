#ifndef KANNUDI_SESSION_HPP
#define KANNUDI_SESSION_HPP

// A stateful editing session over the pure composer, with a JSON state and
// event format for front ends.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kannudi/composer.hpp"
#include "kannudi/keymap.hpp"
#include "kannudi/script.hpp"

namespace kannudi {

class Session {
 public:
  explicit Session(ComposerConfig config = {}, KeyLayout layout = default_layout())
      : config_(std::move(config)), layout_(std::move(layout)) {}

  const EditorBuffer& buffer() const { return buffer_; }
  const ComposerConfig& config() const { return config_; }
  const KeyLayout& layout() const { return layout_; }
  const std::vector<Notice>& last_notices() const { return notices_; }

  /// Later keys use the new settings; existing text is untouched.
  void set_config(ComposerConfig config) {
    config_ = std::move(config);
    buffer_.pending_hold.reset();
  }

  const std::vector<Notice>& press(const KeyEvent& ev) {
    ApplyResult r = apply(buffer_, resolve(layout_, ev), config_);
    buffer_ = std::move(r.buffer);
    notices_ = std::move(r.notices);
    return notices_;
  }

  void move(CursorMotion motion) {
    buffer_ = move_cursor(buffer_, motion);
    notices_.clear();
  }

  const std::vector<Notice>& step(const std::variant<KeyEvent, CursorMotion>& input) {
    if (const auto* ev = std::get_if<KeyEvent>(&input)) return press(*ev);
    move(std::get<CursorMotion>(input));
    return notices_;
  }

  void reset() {
    buffer_ = {};
    notices_.clear();
  }

  std::string text() const { return render(buffer_); }

 private:
  ComposerConfig config_;
  KeyLayout layout_;
  EditorBuffer buffer_;
  std::vector<Notice> notices_;
};

// ---------------------------------------------------------------------------
// JSON bridge

namespace json_bridge {

using nlohmann::json;

inline Modifier parse_modifier(const std::string& s) {
  if (s == "none" || s.empty()) return Modifier::None;
  if (s == "alt") return Modifier::Alt;
  if (s == "shift") return Modifier::Shift;
  if (s == "ctrl") return Modifier::Ctrl;
  throw std::invalid_argument("unknown modifier '" + s + "'");
}

inline CursorMotion parse_motion(const std::string& s) {
  if (s == "left") return CursorMotion::Left;
  if (s == "right") return CursorMotion::Right;
  if (s == "home") return CursorMotion::Home;
  if (s == "end") return CursorMotion::End;
  throw std::invalid_argument("unknown motion '" + s + "'");
}

inline char32_t parse_key(const std::string& key) {
  if (key == "Backspace") return kBackspaceKey;
  if (key == "Space") return U' ';
  if (key == "ZWJ") return codepoint::kZwj;
  if (key == "ZWNJ") return codepoint::kZwnj;
  const std::u32string cps = utf8::decode(key);
  if (cps.size() != 1) throw std::invalid_argument("key must be one character: '" + key + "'");
  return cps[0];
}

/// {"key": "k", "shift": false, "hold": true, "modifier": "none"}
inline KeyEvent key_event_from_json(const json& j) {
  KeyEvent ev;
  ev.base = parse_key(j.at("key").get<std::string>());
  ev.shift = j.value("shift", false);
  ev.hold = j.value("hold", false);
  ev.modifier = parse_modifier(j.value("modifier", std::string("none")));
  return ev;
}

inline ComposerConfig config_from_json(const json& j, ComposerConfig base = {}) {
  if (j.contains("default_vowel")) {
    const auto v = j.at("default_vowel").get<std::string>();
    if (v == "a") base.default_vowel = DefaultVowel::InherentA;
    else if (v == "null") base.default_vowel = DefaultVowel::Null;
    else throw std::invalid_argument("unknown default_vowel '" + v + "'");
  }
  if (j.contains("mode")) {
    const auto m = j.at("mode").get<std::string>();
    if (m == "off") base.ohok_mode = OhokMode::Off;
    else if (m == "so") base.ohok_mode = OhokMode::SvaOttu;
    else if (m == "ko") base.ohok_mode = OhokMode::Kandante;
    else if (m == "ao") base.ohok_mode = OhokMode::Andante;
    else throw std::invalid_argument("unknown mode '" + m + "'");
  }
  base.shunyification = j.value("shunyification", base.shunyification);
  base.arkification = j.value("arkification", base.arkification);
  base.strict_rules = j.value("strict_rules", base.strict_rules);
  if (j.contains("ascii_digits")) base.numerals = j.at("ascii_digits").get<bool>() ? Numerals::Ascii : Numerals::Kannada;
  if (j.contains("repha_exceptions")) base.repha_exceptions = j.at("repha_exceptions").get<std::vector<std::string>>();
  return base;
}

inline json config_to_json(const ComposerConfig& c) {
  const char* modes[] = {"off", "so", "ko", "ao"};
  return {{"default_vowel", c.default_vowel == DefaultVowel::InherentA ? "a" : "null"},
          {"mode", modes[static_cast<int>(c.ohok_mode)]},
          {"shunyification", c.shunyification},
          {"arkification", c.arkification},
          {"strict_rules", c.strict_rules},
          {"ascii_digits", c.numerals == Numerals::Ascii},
          {"repha_exceptions", c.repha_exceptions}};
}

/// Rendered text plus scalar offsets for the cursor and every syllable, so a
/// view can highlight the syllable being composed.
inline json state_to_json(const Session& s) {
  const EditorBuffer& b = s.buffer();
  json syllables = json::array();
  std::size_t offset = 0;
  std::size_t cursor_offset = 0;
  std::optional<std::size_t> current;
  for (const Unit& unit : segment_units(b.elements)) {
    const std::u32string piece = render_u32(std::span<const Element>(b.elements).subspan(unit.begin, unit.end - unit.begin));
    if (unit.end <= b.cursor) cursor_offset = offset + piece.size();
    if (unit.kind == UnitKind::Syllable) {
      if (unit.begin < b.cursor && b.cursor <= unit.end) current = syllables.size();
      syllables.push_back({{"begin", offset}, {"end", offset + piece.size()}, {"text", utf8::encode(piece)}});
    }
    offset += piece.size();
  }
  json notices = json::array();
  for (const Notice& n : s.last_notices()) {
    notices.push_back({{"kind", notice_name(n.kind)}, {"message", n.message}, {"blocked", n.blocks_input()}});
  }
  json out = {{"text", s.text()},
              {"cursor", cursor_offset},
              {"syllables", syllables},
              {"current_syllable", current ? json(*current) : json(nullptr)},
              {"pending_hold", b.pending_hold ? json(std::string(name(*b.pending_hold))) : json(nullptr)},
              {"notices", notices},
              {"config", config_to_json(s.config())}};
  return out;
}

/// One request: {"key":..}, {"motion":..}, {"config":{..}}, {"reset":true}
/// or {"state":true}. Returns the state after handling it.
inline json handle_request(Session& s, const json& request) {
  if (request.contains("key")) {
    s.press(key_event_from_json(request));
  } else if (request.contains("motion")) {
    s.move(parse_motion(request.at("motion").get<std::string>()));
  } else if (request.contains("config")) {
    s.set_config(config_from_json(request.at("config"), s.config()));
  } else if (request.value("reset", false)) {
    s.reset();
  } else if (!request.value("state", false)) {
    throw std::invalid_argument("request needs one of key, motion, config, reset, state");
  }
  return state_to_json(s);
}

}  // namespace json_bridge

}  // namespace kannudi

#endif  // KANNUDI_SESSION_HPP
