#ifndef KANNUDI_TESTS_SUPPORT_HPP
#define KANNUDI_TESTS_SUPPORT_HPP

// Shared helpers for the unit tests and the acceptance runner: script replay,
// an element-wise reference renderer, random keystroke generators and a
// breadth-first search for the cheapest key trace of a word.

#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "kannudi/analyzer.hpp"
#include "kannudi/composer.hpp"
#include "kannudi/keymap.hpp"
#include "kannudi/script.hpp"
#include "kannudi/session.hpp"

namespace kt {

using namespace kannudi;

inline ComposerConfig config(DefaultVowel v = DefaultVowel::InherentA, OhokMode m = OhokMode::Off) {
  ComposerConfig c;
  c.default_vowel = v;
  c.ohok_mode = m;
  return c;
}

inline Session run(std::string_view script, const ComposerConfig& cfg = {}) {
  Session s(cfg);
  for (const auto& step : parse_script(script)) s.step(step.input);
  return s;
}

inline std::string type(std::string_view script, const ComposerConfig& cfg = {}) { return run(script, cfg).text(); }

inline std::vector<std::string> trace(std::string_view script, const ComposerConfig& cfg = {}) {
  Session s(cfg);
  std::vector<std::string> out;
  for (const auto& step : parse_script(script)) {
    s.step(step.input);
    out.push_back(s.text());
  }
  return out;
}

inline std::string u8(std::u32string_view s) { return utf8::encode(s); }

/// Reference rendering without segmentation: a vowel directly after a
/// consonant is its sign, every other vowel is the letter.
inline std::u32string naive_render(const std::vector<Element>& e) {
  std::u32string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Element& el = e[i];
    switch (el.kind) {
      case ElementKind::Space:
      case ElementKind::Literal: out.push_back(el.literal); continue;
      case ElementKind::Zwj: out.push_back(0x200D); continue;
      case ElementKind::Zwnj: out.push_back(0x200C); continue;
      case ElementKind::Seam: continue;
      case ElementKind::Phoneme: break;
    }
    const Phoneme& p = el.phoneme;
    if (p.is_vowel()) {
      const VowelForm f = vowel_form(*p.vowel_id());
      if (i > 0 && e[i - 1].is_consonant()) {
        if (f.matra != 0) out.push_back(f.matra);
      } else {
        out.push_back(f.independent);
      }
    } else if (p.is_consonant()) {
      out.push_back(consonant_base(*p.consonant_id()));
    } else if (p.is_virama()) {
      out.push_back(0x0CCD);
    } else if (p.kind() == PhonemeKind::Anusvara) {
      out.push_back(0x0C82);
    } else {
      out.push_back(0x0C83);
    }
  }
  return out;
}

/// Buffer up to override marks and the explicit inherent vowel.
inline std::vector<Element> canonical(const std::vector<Element>& e) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].is_mark()) continue;
    if (e[i].is_vowel() && e[i].phoneme.vowel_id() == Vowel::A && !out.empty() && out.back().is_consonant()) continue;
    out.push_back(e[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random input

struct KeyGen {
  bool deletes = true;
  bool overrides = false;  // ZWJ / ZWNJ
  bool spaces = true;
  bool digits = true;
};

inline KeyEvent random_key(std::mt19937_64& rng, const KeyGen& gen) {
  static const std::string letters = "qwertyuiopasdfghjklzxcvbnm";
  std::uniform_int_distribution<int> pick(0, 99);
  const int r = pick(rng);
  if (gen.deletes && r < 8) {
    std::uniform_int_distribution<int> mod(0, 3);
    return KeyEvent{kBackspaceKey, false, false, static_cast<Modifier>(mod(rng))};
  }
  if (gen.spaces && r < 14) return KeyEvent{U' ', false, false, Modifier::None};
  if (gen.overrides && r < 18) return KeyEvent{r % 2 ? codepoint::kZwj : codepoint::kZwnj, false, false, Modifier::None};
  if (gen.digits && r < 20) return KeyEvent{static_cast<char32_t>(U'0' + r % 10), false, false, Modifier::None};
  std::uniform_int_distribution<std::size_t> letter(0, letters.size() - 1);
  KeyEvent ev{static_cast<char32_t>(letters[letter(rng)]), false, false, Modifier::None};
  ev.shift = pick(rng) < 30;
  ev.hold = pick(rng) < 25;
  return ev;
}

inline ComposerConfig random_config(std::mt19937_64& rng, bool strict) {
  std::uniform_int_distribution<int> bit(0, 1), mode(0, 3);
  ComposerConfig c;
  c.default_vowel = bit(rng) ? DefaultVowel::InherentA : DefaultVowel::Null;
  c.ohok_mode = static_cast<OhokMode>(mode(rng));
  c.shunyification = bit(rng);
  c.strict_rules = strict;
  return c;
}

inline EditorBuffer random_buffer(std::mt19937_64& rng, const ComposerConfig& cfg, const KeyGen& gen,
                                  std::size_t max_keys = 24) {
  std::uniform_int_distribution<std::size_t> len(1, max_keys);
  EditorBuffer b;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) b = apply(b, resolve(default_layout(), random_key(rng, gen)), cfg).buffer;
  return b;
}

/// Structural violations of the strict rules in a buffer, ignoring syllables
/// that carry an override.
inline std::vector<std::string> strict_violations(const EditorBuffer& b) {
  std::vector<std::string> out;
  for (const Syllable& s : segment(b)) {
    if (s.rule_suppressed()) continue;
    if (s.is_pure_vowel() && !s.word_initial) out.push_back("mid-word independent vowel");
    for (std::size_t i = 1; i < s.onset.size(); ++i)
      if (is_aspirated(s.onset[i - 1]) && is_aspirated(s.onset[i])) out.push_back("aspirated-aspirated cluster");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cheapest key trace

/// Fewest keystrokes that produce `target` from an empty buffer, searching
/// taps of every phoneme key and, outside Off mode, holds of every consonant
/// key. Returns -1 if unreachable within `max_depth`.
inline int min_keystrokes(const std::u32string& target, const ComposerConfig& cfg, int max_depth = 8) {
  const KeyLayout& layout = default_layout();
  std::vector<KeyAction> actions;
  for (const auto& [key, phoneme] : layout.entries()) {
    actions.push_back(KeyAction::input(phoneme, false));
    if (phoneme.is_consonant() && cfg.ohok_mode != OhokMode::Off) actions.push_back(KeyAction::input(phoneme, true));
  }
  // Prune states whose consonant/vowel skeleton has left the target's.
  auto skeleton = [](const std::vector<Element>& e) {
    std::vector<Element> out;
    for (const Element& el : canonical(e))
      if (!el.is_virama()) out.push_back(el);
    return out;
  };
  const auto goal = skeleton(parse_text(target).elements);
  auto viable = [&](const EditorBuffer& b) {
    const auto s = skeleton(b.elements);
    if (s.size() > goal.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!(s[i] == goal[i])) return false;
    return b.elements.size() <= 2 * target.size() + 2;
  };

  std::deque<std::pair<EditorBuffer, int>> queue{{EditorBuffer{}, 0}};
  std::set<std::vector<std::pair<int, int>>> seen;
  auto key_of = [](const EditorBuffer& b) {
    std::vector<std::pair<int, int>> k;
    for (const Element& e : b.elements) k.emplace_back(static_cast<int>(e.kind), static_cast<int>(phoneme_index(e.phoneme)));
    return k;
  };
  seen.insert(key_of(EditorBuffer{}));
  while (!queue.empty()) {
    auto [buffer, depth] = queue.front();
    queue.pop_front();
    if (render_u32(buffer) == target) return depth;
    if (depth >= max_depth) continue;
    for (const KeyAction& a : actions) {
      ApplyResult r = apply(buffer, a, cfg);
      if (r.blocked() || !viable(r.buffer)) continue;
      if (!seen.insert(key_of(r.buffer)).second) continue;
      queue.emplace_back(std::move(r.buffer), depth + 1);
    }
  }
  return -1;
}

/// Words of the synthetic 1000-syllable corpus with their multiplicities.
/// Ottu classes carry the reference per-1000 counts; the mula and
/// gunitakshara fillers bring the total to 1000.
inline const std::vector<std::pair<std::u32string, int>>& synthetic_corpus_words() {
  static const std::vector<std::pair<std::u32string, int>> words{
      {U"ಅಕ್ಕ", 11},  // mula + post-vowel dvitva
      {U"ಕಕ್ಕ", 76},  // mula + dvitva
      {U"ಕಗ್ರ", 88},  // mula + vijati
      {U"ಕನ್", 7},    // mula + end virama
      {U"ಕ", 242},
      {U"ಕಿಂ", 56},   // gunitakshara with anusvara
      {U"ಕಿ", 338},
  };
  return words;
}

inline std::string synthetic_corpus_text() {
  std::u32string text;
  for (const auto& [word, count] : synthetic_corpus_words()) {
    for (int i = 0; i < count; ++i) {
      if (!text.empty()) text.push_back(U' ');
      text += word;
    }
  }
  return utf8::encode(text);
}

/// Keys saved per 1000 syllables by brute force: cheapest trace of every
/// corpus word in Off mode minus the cheapest in `mode`.
inline long simulated_savings(DefaultVowel regime, OhokMode mode) {
  long total_off = 0;
  long total_mode = 0;
  long syllables = 0;
  for (const auto& [word, count] : synthetic_corpus_words()) {
    const int off = min_keystrokes(word, config(regime, OhokMode::Off));
    const int with = min_keystrokes(word, config(regime, mode));
    if (off < 0 || with < 0) return -1;
    total_off += static_cast<long>(off) * count;
    total_mode += static_cast<long>(with) * count;
    syllables += static_cast<long>(count_syllables(utf8::encode(word)).total()) * count;
  }
  return (total_off - total_mode) * 1000 / syllables;
}

// ---------------------------------------------------------------------------
// Files and processes

inline std::string source_path(const std::string& rel) { return std::string(KANNUDI_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

/// Run the CLI with its stderr discarded or merged.
inline ProcessResult run_cli(const std::string& args, const std::string& stdin_text = "", bool merge_stderr = false) {
  static int counter = 0;
  const std::string input = "/tmp/kannudi_cli_in_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  {
    std::ofstream f(input, std::ios::binary);
    f << stdin_text;
  }
  const std::string cmd = std::string(KANNUDI_CLI_PATH) + " " + args + " < " + input +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  ProcessResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::remove(input.c_str());
  return r;
}

}  // namespace kt

#endif  // KANNUDI_TESTS_SUPPORT_HPP
