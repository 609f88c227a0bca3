#ifndef KANNUDI_KEYMAP_HPP
#define KANNUDI_KEYMAP_HPP

// One-phoneme-one-key layouts and resolution of physical key events.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kannudi/default_layout.hpp"
#include "kannudi/phonology.hpp"
#include "kannudi/utf8.hpp"

namespace kannudi {

inline constexpr char32_t kBackspaceKey = U'\b';

enum class Modifier : std::uint8_t { None, Alt, Shift, Ctrl };

/// A physical keystroke. `hold` is the press-and-hold (or pressure) gesture;
/// `modifier` only matters for backspace.
struct KeyEvent {
  char32_t base = 0;
  bool shift = false;
  bool hold = false;
  Modifier modifier = Modifier::None;

  friend bool operator==(const KeyEvent&, const KeyEvent&) = default;
};

enum class ActionKind : std::uint8_t { PhonemeInput, Digit, Delete, Zwj, Zwnj, SpaceBarrier, Passthrough };

enum class DeleteGranularity : std::uint8_t { Phoneme, Character, Syllable, Word };

struct KeyAction {
  ActionKind kind = ActionKind::Passthrough;
  std::optional<Phoneme> phoneme;                       // PhonemeInput
  std::optional<DeleteGranularity> delete_granularity;  // Delete
  std::optional<int> digit;                             // Digit, 0..9
  char32_t text = 0;                                    // Passthrough
  bool held = false;

  static KeyAction input(Phoneme p, bool held = false) {
    KeyAction a;
    a.kind = ActionKind::PhonemeInput;
    a.phoneme = p;
    a.held = held && p.is_consonant();
    return a;
  }
  static KeyAction erase(DeleteGranularity g) {
    KeyAction a;
    a.kind = ActionKind::Delete;
    a.delete_granularity = g;
    return a;
  }
  static KeyAction number(int d) {
    KeyAction a;
    a.kind = ActionKind::Digit;
    a.digit = d;
    return a;
  }
  static KeyAction of(ActionKind kind) {
    KeyAction a;
    a.kind = kind;
    return a;
  }
  static KeyAction passthrough(char32_t ch) {
    KeyAction a;
    a.kind = ActionKind::Passthrough;
    a.text = ch;
    return a;
  }

  friend bool operator==(const KeyAction&, const KeyAction&) = default;
};

struct KeyBinding {
  char32_t base;  // lower-case for letters
  bool shift;

  friend auto operator<=>(const KeyBinding&, const KeyBinding&) = default;
};

enum class LayoutErrorKind : std::uint8_t { Malformed, UnknownPhoneme, DuplicatePhoneme, DuplicateKey, MissingPhoneme };

class LayoutError : public std::runtime_error {
 public:
  LayoutError(LayoutErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}

  LayoutErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  LayoutErrorKind kind_;
  std::size_t line_;
};

/// Dense index of a phoneme within phoneme_inventory().
inline constexpr std::size_t phoneme_index(Phoneme p) {
  switch (p.kind()) {
    case PhonemeKind::Vowel: return static_cast<std::size_t>(*p.vowel_id());
    case PhonemeKind::Consonant: return kVowelCount + static_cast<std::size_t>(*p.consonant_id());
    case PhonemeKind::Anusvara: return kVowelCount + kConsonantCount;
    case PhonemeKind::Visarga: return kVowelCount + kConsonantCount + 1;
    case PhonemeKind::NullVowel: return kVowelCount + kConsonantCount + 2;
  }
  return 0;
}

inline constexpr std::size_t kPhonemeCount = kVowelCount + kConsonantCount + 3;

class KeyLayout {
 public:
  KeyLayout(std::string name, std::map<KeyBinding, Phoneme> entries)
      : name_(std::move(name)), entries_(std::move(entries)) {}

  const std::string& name() const { return name_; }
  const std::map<KeyBinding, Phoneme>& entries() const { return entries_; }

  std::optional<Phoneme> lookup(KeyBinding key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  /// Phoneme -> key. Throws LayoutError on a collision.
  std::map<std::size_t, KeyBinding> inverse() const {
    std::map<std::size_t, KeyBinding> out;
    for (const auto& [key, phoneme] : entries_) {
      auto [it, inserted] = out.emplace(phoneme_index(phoneme), key);
      if (!inserted) {
        throw LayoutError(LayoutErrorKind::DuplicatePhoneme, 0,
                          "phoneme '" + kannudi::name(phoneme) + "' is bound to more than one key");
      }
    }
    return out;
  }

  std::optional<KeyBinding> key_for(Phoneme p) const {
    for (const auto& [key, phoneme] : entries_)
      if (phoneme == p) return key;
    return std::nullopt;
  }

 private:
  std::string name_;
  std::map<KeyBinding, Phoneme> entries_;
};

namespace detail {

inline char32_t fold_letter(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c - U'A' + U'a';
  return c;
}

inline bool is_upper_letter(char32_t c) { return c >= U'A' && c <= U'Z'; }

}  // namespace detail

/// Parse and validate a layout document ("BASE SHIFTFLAG ACTION" per line,
/// '#' comments). Every inventory phoneme must appear on exactly one key.
inline KeyLayout load_layout(std::string_view document, std::string name = "custom") {
  std::map<KeyBinding, Phoneme> entries;
  std::array<std::size_t, kPhonemeCount> seen_on_line{};

  std::istringstream in{std::string(document)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string base_field, shift_field, action_field, extra;
    if (!(fields >> base_field)) continue;
    if (!(fields >> shift_field >> action_field) || (fields >> extra)) {
      throw LayoutError(LayoutErrorKind::Malformed, line_no, "expected 'BASE SHIFTFLAG ACTION'");
    }

    std::u32string base;
    try {
      base = utf8::decode(base_field);
    } catch (const std::invalid_argument& e) {
      throw LayoutError(LayoutErrorKind::Malformed, line_no, e.what());
    }
    if (base.size() != 1 || detail::is_upper_letter(base[0]) || (base[0] >= U'0' && base[0] <= U'9')) {
      throw LayoutError(LayoutErrorKind::Malformed, line_no,
                        "BASE must be one non-digit character (lower-case for letters): '" + base_field + "'");
    }
    if (shift_field != "0" && shift_field != "1") {
      throw LayoutError(LayoutErrorKind::Malformed, line_no, "SHIFTFLAG must be 0 or 1");
    }
    auto phoneme = phoneme_from_name(action_field);
    if (!phoneme) {
      throw LayoutError(LayoutErrorKind::UnknownPhoneme, line_no, "unknown phoneme '" + action_field + "'");
    }

    const KeyBinding key{base[0], shift_field == "1"};
    if (!entries.emplace(key, *phoneme).second) {
      throw LayoutError(LayoutErrorKind::DuplicateKey, line_no, "key '" + base_field + "' already assigned");
    }
    auto& first = seen_on_line[phoneme_index(*phoneme)];
    if (first != 0) {
      throw LayoutError(LayoutErrorKind::DuplicatePhoneme, line_no,
                        "phoneme '" + action_field + "' already assigned on line " + std::to_string(first));
    }
    first = line_no;
  }

  for (Phoneme p : phoneme_inventory()) {
    if (seen_on_line[phoneme_index(p)] == 0) {
      throw LayoutError(LayoutErrorKind::MissingPhoneme, 0, "phoneme '" + kannudi::name(p) + "' has no key");
    }
  }
  return KeyLayout(std::move(name), std::move(entries));
}

inline const KeyLayout& default_layout() {
  static const KeyLayout layout = load_layout(kDefaultLayoutText, std::string(kDefaultLayoutName));
  return layout;
}

inline KeyAction resolve(const KeyLayout& layout, const KeyEvent& ev) {
  if (ev.base == kBackspaceKey) {
    switch (ev.modifier) {
      case Modifier::None: return KeyAction::erase(DeleteGranularity::Phoneme);
      case Modifier::Alt: return KeyAction::erase(DeleteGranularity::Character);
      case Modifier::Shift: return KeyAction::erase(DeleteGranularity::Syllable);
      case Modifier::Ctrl: return KeyAction::erase(DeleteGranularity::Word);
    }
  }
  if (ev.base == U' ') return KeyAction::of(ActionKind::SpaceBarrier);
  if (ev.base == codepoint::kZwj) return KeyAction::of(ActionKind::Zwj);
  if (ev.base == codepoint::kZwnj) return KeyAction::of(ActionKind::Zwnj);
  if (ev.base >= U'0' && ev.base <= U'9') return KeyAction::number(static_cast<int>(ev.base - U'0'));

  const KeyBinding key{detail::fold_letter(ev.base), ev.shift || detail::is_upper_letter(ev.base)};
  if (auto phoneme = layout.lookup(key)) return KeyAction::input(*phoneme, ev.hold);
  return KeyAction::passthrough(ev.base);
}

}  // namespace kannudi

#endif  // KANNUDI_KEYMAP_HPP
