#ifndef KANNUDI_SCRIPT_HPP
#define KANNUDI_SCRIPT_HPP

// Keystroke scripts: the trace notation of the savings tables ("s+t+rI",
// "k f k") plus bracketed special keys.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kannudi/composer.hpp"
#include "kannudi/keymap.hpp"
#include "kannudi/utf8.hpp"

namespace kannudi {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ScriptStep {
  std::variant<KeyEvent, CursorMotion> input;
  std::string label;
  std::size_t line = 0;
  std::size_t column = 0;
};

namespace detail {

inline const std::map<std::string, std::variant<KeyEvent, CursorMotion>, std::less<>>& special_keys() {
  static const std::map<std::string, std::variant<KeyEvent, CursorMotion>, std::less<>> keys{
      {"<BS>", KeyEvent{kBackspaceKey, false, false, Modifier::None}},
      {"<A-BS>", KeyEvent{kBackspaceKey, false, false, Modifier::Alt}},
      {"<S-BS>", KeyEvent{kBackspaceKey, false, false, Modifier::Shift}},
      {"<C-BS>", KeyEvent{kBackspaceKey, false, false, Modifier::Ctrl}},
      {"<SP>", KeyEvent{U' ', false, false, Modifier::None}},
      {"<ZWJ>", KeyEvent{codepoint::kZwj, false, false, Modifier::None}},
      {"<ZWNJ>", KeyEvent{codepoint::kZwnj, false, false, Modifier::None}},
      {"<LEFT>", CursorMotion::Left},
      {"<RIGHT>", CursorMotion::Right},
      {"<HOME>", CursorMotion::Home},
      {"<END>", CursorMotion::End},
  };
  return keys;
}

inline bool is_ascii_letter(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n'; }

inline constexpr char32_t kSuperscriptPlus = 0x207A;

}  // namespace detail

/// Parse a script. Letters are taps (upper case = shift), a following '+'
/// (or '⁺') makes the letter a hold, digits are digit keys, '#' starts a
/// comment. Anything else is an error.
inline std::vector<ScriptStep> parse_script(std::string_view source) {
  std::u32string text;
  try {
    text = utf8::decode(source);
  } catch (const std::invalid_argument& e) {
    throw ScriptError(1, 1, e.what());
  }

  std::vector<ScriptStep> steps;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == U'\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };

  while (i < text.size()) {
    const char32_t c = text[i];
    if (detail::is_space(c)) {
      advance();
      continue;
    }
    if (c == U'#') {
      while (i < text.size() && text[i] != U'\n') advance();
      continue;
    }
    if (c == U'<') {
      const std::size_t start_col = col;
      std::u32string name;
      while (i < text.size() && !detail::is_space(text[i])) {
        name.push_back(text[i]);
        const bool closed = text[i] == U'>';
        advance();
        if (closed) break;
      }
      const std::string key = utf8::encode(name);
      const auto& specials = detail::special_keys();
      auto it = specials.find(key);
      if (it == specials.end()) throw ScriptError(line, start_col, "unknown token '" + key + "'");
      steps.push_back({it->second, key, line, start_col});
      continue;
    }
    if (detail::is_ascii_letter(c)) {
      const std::size_t start_col = col;
      advance();
      bool hold = false;
      if (i < text.size() && (text[i] == U'+' || text[i] == detail::kSuperscriptPlus)) {
        hold = true;
        advance();
      }
      std::string label(1, static_cast<char>(c));
      if (hold) label += '+';
      steps.push_back({KeyEvent{c, false, hold, Modifier::None}, label, line, start_col});
      continue;
    }
    if (detail::is_ascii_digit(c)) {
      steps.push_back({KeyEvent{c, false, false, Modifier::None}, std::string(1, static_cast<char>(c)), line, col});
      advance();
      continue;
    }
    std::string bad;
    utf8::append(bad, c);
    throw ScriptError(line, col, "unknown token '" + bad + "'");
  }
  return steps;
}

}  // namespace kannudi

#endif  // KANNUDI_SCRIPT_HPP
