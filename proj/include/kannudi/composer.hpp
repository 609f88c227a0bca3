#ifndef KANNUDI_COMPOSER_HPP
#define KANNUDI_COMPOSER_HPP

// The editing state machine. An EditorBuffer is an input history of phonemes
// and barrier tokens; syllables and text are always derived from it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kannudi/keymap.hpp"
#include "kannudi/phonology.hpp"
#include "kannudi/utf8.hpp"

namespace kannudi {

enum class DefaultVowel : std::uint8_t { InherentA, Null };
enum class OhokMode : std::uint8_t { Off, SvaOttu, Kandante, Andante };
enum class Numerals : std::uint8_t { Kannada, Ascii };

struct ComposerConfig {
  DefaultVowel default_vowel = DefaultVowel::InherentA;
  OhokMode ohok_mode = OhokMode::Off;
  bool shunyification = true;
  bool arkification = true;
  bool strict_rules = true;
  Numerals numerals = Numerals::Kannada;
  /// Words (storage form, UTF-8) in which ra + virama + consonant must keep
  /// the full ra instead of the repha. Empty by default.
  std::vector<std::string> repha_exceptions;
};

enum class ElementKind : std::uint8_t {
  Phoneme,
  Space,    // word barrier
  Zwj,
  Zwnj,
  Seam,     // left behind by a deleted space: invisible, suppresses rules
  Literal,  // digits, punctuation and other pass-through text
};

struct Element {
  ElementKind kind = ElementKind::Phoneme;
  Phoneme phoneme = Phoneme::virama();
  char32_t literal = 0;

  static Element of(Phoneme p) { return {ElementKind::Phoneme, p, 0}; }
  static Element of(Consonant c) { return of(Phoneme::consonant(c)); }
  static Element of(Vowel v) { return of(Phoneme::vowel(v)); }
  static Element virama() { return of(Phoneme::virama()); }
  static Element space() { return {ElementKind::Space, Phoneme::virama(), U' '}; }
  static Element zwj() { return {ElementKind::Zwj, Phoneme::virama(), 0}; }
  static Element zwnj() { return {ElementKind::Zwnj, Phoneme::virama(), 0}; }
  static Element seam() { return {ElementKind::Seam, Phoneme::virama(), 0}; }
  static Element text(char32_t ch) { return {ElementKind::Literal, Phoneme::virama(), ch}; }

  bool is_phoneme() const { return kind == ElementKind::Phoneme; }
  bool is_mark() const { return kind == ElementKind::Zwj || kind == ElementKind::Zwnj || kind == ElementKind::Seam; }
  bool is_barrier() const { return kind == ElementKind::Space || kind == ElementKind::Literal; }
  bool is_consonant() const { return is_phoneme() && phoneme.is_consonant(); }
  bool is_consonant(Consonant c) const { return is_phoneme() && phoneme.consonant_id() == c; }
  bool is_vowel() const { return is_phoneme() && phoneme.is_vowel(); }
  bool is_virama() const { return is_phoneme() && phoneme.is_virama(); }
  bool is_final_mark() const { return is_phoneme() && phoneme.is_final_mark(); }

  friend bool operator==(const Element&, const Element&) = default;
};

struct EditorBuffer {
  std::vector<Element> elements;
  std::size_t cursor = 0;  // in [0, elements.size()]
  std::optional<Consonant> pending_hold;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }

  friend bool operator==(const EditorBuffer&, const EditorBuffer&) = default;
};

enum class NoticeKind : std::uint8_t {
  NonInitialVowel,
  IllegalAspiratedCluster,
  InvalidPosition,
  KandanteUnattached,
  Shunyified,
  Arkified,
};

struct Notice {
  NoticeKind kind;
  std::string message;

  /// Blocking notices mean the keystroke, or part of it, was rejected.
  bool blocks_input() const {
    return kind == NoticeKind::NonInitialVowel || kind == NoticeKind::IllegalAspiratedCluster ||
           kind == NoticeKind::InvalidPosition;
  }
};

inline std::string_view notice_name(NoticeKind kind) {
  switch (kind) {
    case NoticeKind::NonInitialVowel: return "NonInitialVowel";
    case NoticeKind::IllegalAspiratedCluster: return "IllegalAspiratedCluster";
    case NoticeKind::InvalidPosition: return "InvalidPosition";
    case NoticeKind::KandanteUnattached: return "KandanteUnattached";
    case NoticeKind::Shunyified: return "Shunyified";
    case NoticeKind::Arkified: return "Arkified";
  }
  return "Unknown";
}

struct ApplyResult {
  EditorBuffer buffer;
  std::vector<Notice> notices;

  bool blocked() const {
    return std::any_of(notices.begin(), notices.end(), [](const Notice& n) { return n.blocks_input(); });
  }
};

// ---------------------------------------------------------------------------
// Segmentation

enum class UnitKind : std::uint8_t { Syllable, Barrier, Stray };

/// A run of elements [begin, end): a syllable, a barrier (space, literal or
/// free-standing joiners) or a phoneme that cannot attach to anything.
struct Unit {
  UnitKind kind;
  Syllable syllable;
  std::size_t begin;
  std::size_t end;
};

namespace detail {

class Segmenter {
 public:
  explicit Segmenter(std::span<const Element> elements) : elements_(elements) {}

  std::vector<Unit> run() {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      step(i, elements_[i]);
      last_was_mark_ = elements_[i].is_mark();
    }
    close(elements_.size());
    flush_loose_marks(elements_.size());
    return std::move(units_);
  }

 private:
  struct Open {
    Syllable syllable;
    std::size_t begin = 0;
    bool pending_virama = false;
  };

  static OverrideKind override_kind(ElementKind k) {
    if (k == ElementKind::Zwj) return OverrideKind::Zwj;
    if (k == ElementKind::Zwnj) return OverrideKind::Zwnj;
    return OverrideKind::RuleSuppressed;
  }

  std::size_t open_slot() const {
    return open_->syllable.phoneme_count() + (open_->pending_virama ? 1 : 0);
  }

  void step(std::size_t i, const Element& el) {
    if (el.is_barrier()) {
      close(i);
      flush_loose_marks(i);
      units_.push_back({UnitKind::Barrier, {}, i, i + 1});
      word_start_ = true;
      return;
    }
    if (el.is_mark()) {
      if (open_) {
        open_->syllable.overrides.push_back({override_kind(el.kind), open_slot()});
      } else {
        if (!loose_begin_) loose_begin_ = i;
        loose_.push_back({override_kind(el.kind), 0});
      }
      return;
    }

    const Phoneme& p = el.phoneme;
    switch (p.kind()) {
      case PhonemeKind::Consonant:
        if (open_ && open_->pending_virama) {
          open_->syllable.onset.push_back(*p.consonant_id());
          open_->pending_virama = false;
        } else {
          start(i);
          open_->syllable.onset.push_back(*p.consonant_id());
        }
        return;
      case PhonemeKind::NullVowel:
        if (open_ && !open_->syllable.onset.empty() && !open_->pending_virama && !open_->syllable.vowel &&
            !open_->syllable.final_mark) {
          open_->pending_virama = true;
        } else {
          stray(i);
        }
        return;
      case PhonemeKind::Vowel:
        if (open_ && !open_->syllable.onset.empty() && !open_->pending_virama && !open_->syllable.vowel &&
            !open_->syllable.final_mark && !last_was_mark_) {
          open_->syllable.vowel = p.vowel_id();
        } else {
          start(i);
          open_->syllable.vowel = p.vowel_id();
        }
        return;
      case PhonemeKind::Anusvara:
      case PhonemeKind::Visarga:
        if (open_ && !open_->pending_virama && !open_->syllable.final_mark) {
          open_->syllable.final_mark =
              p.kind() == PhonemeKind::Anusvara ? FinalMark::Anusvara : FinalMark::Visarga;
        } else {
          stray(i);
        }
        return;
    }
  }

  void start(std::size_t i) {
    close(i);
    Open next;
    next.begin = loose_begin_.value_or(i);
    next.syllable.word_initial = word_start_;
    next.syllable.overrides = std::move(loose_);
    if (last_was_mark_ && next.syllable.overrides.empty()) {
      next.syllable.overrides.push_back({OverrideKind::RuleSuppressed, 0});
    }
    loose_.clear();
    loose_begin_.reset();
    word_start_ = false;
    open_ = std::move(next);
  }

  void close(std::size_t end) {
    if (!open_) return;
    open_->syllable.trailing_virama = open_->pending_virama;
    units_.push_back({UnitKind::Syllable, std::move(open_->syllable), open_->begin, end});
    open_.reset();
  }

  void stray(std::size_t i) {
    close(i);
    const std::size_t begin = loose_begin_.value_or(i);
    loose_.clear();
    loose_begin_.reset();
    units_.push_back({UnitKind::Stray, {}, begin, i + 1});
  }

  void flush_loose_marks(std::size_t end) {
    if (!loose_begin_) return;
    units_.push_back({UnitKind::Barrier, {}, *loose_begin_, end});
    loose_.clear();
    loose_begin_.reset();
  }

  std::span<const Element> elements_;
  std::vector<Unit> units_;
  std::optional<Open> open_;
  std::vector<OverrideMark> loose_;
  std::optional<std::size_t> loose_begin_;
  bool word_start_ = true;
  bool last_was_mark_ = false;
};

inline void render_element(std::u32string& out, const Element& el) {
  switch (el.kind) {
    case ElementKind::Space:
    case ElementKind::Literal: out.push_back(el.literal); return;
    case ElementKind::Zwj: out.push_back(codepoint::kZwj); return;
    case ElementKind::Zwnj: out.push_back(codepoint::kZwnj); return;
    case ElementKind::Seam: return;
    case ElementKind::Phoneme: break;
  }
  switch (el.phoneme.kind()) {
    case PhonemeKind::Vowel: out.push_back(vowel_form(*el.phoneme.vowel_id()).independent); return;
    case PhonemeKind::Consonant: out.push_back(consonant_base(*el.phoneme.consonant_id())); return;
    case PhonemeKind::Anusvara: out.push_back(codepoint::kAnusvara); return;
    case PhonemeKind::Visarga: out.push_back(codepoint::kVisarga); return;
    case PhonemeKind::NullVowel: out.push_back(codepoint::kVirama); return;
  }
}

}  // namespace detail

inline std::vector<Unit> segment_units(std::span<const Element> elements) {
  return detail::Segmenter(elements).run();
}

/// Maximal syllables of the buffer, in order.
inline std::vector<Syllable> segment(const EditorBuffer& buffer) {
  std::vector<Syllable> out;
  for (auto& unit : segment_units(buffer.elements))
    if (unit.kind == UnitKind::Syllable) out.push_back(std::move(unit.syllable));
  return out;
}

inline std::u32string render_u32(std::span<const Element> elements) {
  std::u32string out;
  for (const Unit& unit : segment_units(elements)) {
    if (unit.kind == UnitKind::Syllable) {
      out += render_syllable(unit.syllable);
    } else {
      for (std::size_t i = unit.begin; i < unit.end; ++i) detail::render_element(out, elements[i]);
    }
  }
  return out;
}

inline std::u32string render_u32(const EditorBuffer& buffer) { return render_u32(buffer.elements); }

inline std::string render(const EditorBuffer& buffer) { return utf8::encode(render_u32(buffer)); }

// ---------------------------------------------------------------------------
// Text -> buffer

/// Re-derive a buffer from Kannada text (cursor at the end). Decomposed vowel
/// signs are composed; signs with nothing to attach to are dropped. An
/// independent vowel directly after a bare consonant gets a seam so that it
/// stays independent.
inline EditorBuffer parse_text(std::u32string_view text) {
  EditorBuffer buffer;
  auto& out = buffer.elements;
  auto prev_is = [&](auto pred) { return !out.empty() && pred(out.back()); };
  auto last_matra_vowel = [&]() -> std::optional<Vowel> {
    if (out.size() < 2 || !out.back().is_vowel() || !out[out.size() - 2].is_consonant()) return std::nullopt;
    return out.back().phoneme.vowel_id();
  };
  auto replace_vowel = [&](Vowel v) { out.back() = Element::of(v); };

  for (char32_t cp : text) {
    if (auto c = consonant_from_codepoint(cp)) {
      out.push_back(Element::of(*c));
      continue;
    }
    if (auto v = vowel_from_independent(cp)) {
      if (prev_is([](const Element& e) { return e.is_consonant(); })) out.push_back(Element::seam());
      out.push_back(Element::of(*v));
      continue;
    }
    // Canonical compositions of two-part vowel signs.
    if (cp == 0x0CD5 || cp == 0x0CD6 || cp == 0x0CC2) {
      if (auto v = last_matra_vowel()) {
        if (cp == 0x0CD5 && *v == Vowel::I) { replace_vowel(Vowel::II); continue; }
        if (cp == 0x0CD5 && *v == Vowel::E) { replace_vowel(Vowel::EE); continue; }
        if (cp == 0x0CD6 && *v == Vowel::E) { replace_vowel(Vowel::AI); continue; }
        if (cp == 0x0CC2 && *v == Vowel::E) { replace_vowel(Vowel::O); continue; }
        if (cp == 0x0CD5 && *v == Vowel::O) { replace_vowel(Vowel::OO); continue; }
      }
    }
    if (auto v = vowel_from_matra(cp)) {
      if (prev_is([](const Element& e) { return e.is_consonant(); })) out.push_back(Element::of(*v));
      continue;
    }
    if (cp == codepoint::kVirama) {
      if (prev_is([](const Element& e) { return e.is_consonant(); })) out.push_back(Element::virama());
      continue;
    }
    if (cp == codepoint::kAnusvara || cp == codepoint::kVisarga) {
      if (prev_is([](const Element& e) { return e.is_consonant() || e.is_vowel(); })) {
        out.push_back(Element::of(cp == codepoint::kAnusvara ? Phoneme::anusvara() : Phoneme::visarga()));
      }
      continue;
    }
    if (cp == codepoint::kZwj) { out.push_back(Element::zwj()); continue; }
    if (cp == codepoint::kZwnj) { out.push_back(Element::zwnj()); continue; }
    if (cp == 0x0CBC) continue;  // nukta
    if (cp == U' ') { out.push_back(Element::space()); continue; }
    out.push_back(Element::text(cp));
  }
  buffer.cursor = out.size();
  return buffer;
}

inline EditorBuffer parse_text(std::string_view utf8_text) { return parse_text(utf8::decode(utf8_text)); }

// ---------------------------------------------------------------------------
// Convenience rules

namespace detail {

inline bool is_shunya_nasal(const Element& e) {
  return e.is_consonant(Consonant::Na) || e.is_consonant(Consonant::Ma);
}

/// na/ma + virama + consonant at `at` (the consonant) becomes anusvara +
/// consonant, provided the nasal opens a syllable that follows one able to
/// carry the anusvara. Nasal + nasal clusters are kept (ನ್ನ, ಮ್ಮ).
inline bool shunya_pattern_at(std::span<const Element> e, std::size_t at) {
  if (at < 3 || at >= e.size()) return false;
  if (!e[at].is_consonant() || is_nasal(*e[at].phoneme.consonant_id())) return false;
  if (!e[at - 1].is_virama() || !is_shunya_nasal(e[at - 2])) return false;
  const Element& carrier = e[at - 3];
  return carrier.is_consonant() || carrier.is_vowel();
}

inline std::size_t word_start(std::span<const Element> e, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !e[begin - 1].is_barrier()) --begin;
  return begin;
}

/// ra + virama + consonant ending at `at`, with ra heading its cluster.
inline bool repha_pattern_at(std::span<const Element> e, std::size_t at) {
  if (at < 2 || at >= e.size()) return false;
  if (!e[at].is_consonant() || !e[at - 1].is_virama() || !e[at - 2].is_consonant(Consonant::Ra)) return false;
  return at < 3 || !e[at - 3].is_virama();
}

inline bool matches_repha_exception(std::span<const Element> e, std::size_t at, const ComposerConfig& config) {
  if (config.repha_exceptions.empty()) return false;
  std::vector<Element> word;
  for (std::size_t i = word_start(e, at); i <= at; ++i)
    if (!e[i].is_mark()) word.push_back(e[i]);
  const std::u32string typed = render_u32(word);
  for (const std::string& entry : config.repha_exceptions) {
    const std::u32string target = utf8::decode(entry);
    if (target.size() >= typed.size() && target.compare(0, typed.size(), typed) == 0) return true;
  }
  return false;
}

}  // namespace detail

/// Replace every na/ma + virama before a consonant with an anusvara on the
/// preceding syllable. Joiners and seams between the pieces block the rule.
inline EditorBuffer shunyify(EditorBuffer buffer) {
  auto& e = buffer.elements;
  for (std::size_t at = 3; at < e.size(); ++at) {
    if (!detail::shunya_pattern_at(e, at)) continue;
    e[at - 2] = Element::of(Phoneme::anusvara());
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(at - 1));
    if (buffer.cursor > at - 1) --buffer.cursor;
    --at;
  }
  return buffer;
}

/// Insert ZWJ after ra in ra + virama + consonant wherever the word matches
/// an exception entry, keeping the full ra instead of the repha.
inline EditorBuffer arkify(EditorBuffer buffer, const ComposerConfig& config) {
  if (!config.arkification) return buffer;
  auto& e = buffer.elements;
  for (std::size_t at = 2; at < e.size(); ++at) {
    if (!detail::repha_pattern_at(e, at) || !detail::matches_repha_exception(e, at, config)) continue;
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(at - 1), Element::zwj());
    if (buffer.cursor >= at - 1) ++buffer.cursor;
    ++at;
  }
  return buffer;
}

// ---------------------------------------------------------------------------
// Key application

namespace detail {

enum class Tail : std::uint8_t { WordStart, Override, Bare, Open, Closed, Marked };

inline Tail tail_of(const std::vector<Element>& pre) {
  if (pre.empty()) return Tail::WordStart;
  const Element& last = pre.back();
  if (last.is_barrier()) return Tail::WordStart;
  if (last.is_mark()) return Tail::Override;
  switch (last.phoneme.kind()) {
    case PhonemeKind::Consonant: return Tail::Bare;
    case PhonemeKind::NullVowel: return Tail::Open;
    case PhonemeKind::Vowel: return Tail::Closed;
    default: return Tail::Marked;
  }
}

class Composition {
 public:
  Composition(std::vector<Element>& pre, const ComposerConfig& config, std::vector<Notice>& notices)
      : pre_(pre), config_(config), notices_(notices) {}

  bool consonant(Consonant c) {
    const Tail tail = tail_of(pre_);
    bool direct_cluster = false;
    if (tail == Tail::Open) {
      direct_cluster = true;
      const Consonant prev = *pre_[pre_.size() - 2].phoneme.consonant_id();
      if (config_.strict_rules && !is_legal_cluster(prev, c)) {
        block(NoticeKind::IllegalAspiratedCluster,
              std::string(name(prev)) + " cannot take " + std::string(name(c)) + " as ottu");
        return false;
      }
    }
    pre_.push_back(Element::of(c));
    if (direct_cluster) {
      const std::size_t at = pre_.size() - 1;
      if (config_.arkification && repha_pattern_at(pre_, at) && matches_repha_exception(pre_, at, config_)) {
        pre_.insert(pre_.end() - 2, Element::zwj());
        notices_.push_back({NoticeKind::Arkified, "ra kept in full form"});
      } else if (config_.shunyification && shunya_pattern_at(pre_, at)) {
        pre_[at - 2] = Element::of(Phoneme::anusvara());
        pre_.erase(pre_.begin() + static_cast<std::ptrdiff_t>(at - 1));
        notices_.push_back({NoticeKind::Shunyified, "nasal written as anusvara"});
      }
    }
    if (config_.default_vowel == DefaultVowel::Null) pre_.push_back(Element::virama());
    return true;
  }

  bool vowel(Vowel v) {
    switch (tail_of(pre_)) {
      case Tail::WordStart:
      case Tail::Override:
      case Tail::Bare:
        pre_.push_back(Element::of(v));
        return true;
      case Tail::Open:
        pre_.back() = Element::of(v);
        return true;
      case Tail::Closed:
      case Tail::Marked:
        if (config_.strict_rules) {
          block(NoticeKind::NonInitialVowel, "independent vowel " + std::string(name(v)) + " only at word start");
          return false;
        }
        pre_.push_back(Element::of(v));
        return true;
    }
    return false;
  }

  bool virama() {
    if (tail_of(pre_) != Tail::Bare) {
      block(NoticeKind::InvalidPosition, "virama needs a bare consonant");
      return false;
    }
    pre_.push_back(Element::virama());
    return true;
  }

  bool final_mark(Phoneme mark) {
    switch (tail_of(pre_)) {
      case Tail::Bare:
      case Tail::Closed:
        pre_.push_back(Element::of(mark));
        return true;
      case Tail::Open:
        pre_.back() = Element::of(mark);
        return true;
      default:
        block(NoticeKind::InvalidPosition, name(mark) + " needs a syllable");
        return false;
    }
  }

  bool hold(Consonant c) {
    switch (config_.ohok_mode) {
      case OhokMode::Off: return consonant(c);
      case OhokMode::SvaOttu: return sva_ottu(c);
      case OhokMode::Andante:
        if (!consonant(c)) return false;
        ensure_virama();
        return true;
      case OhokMode::Kandante: return kandante(c);
    }
    return false;
  }

 private:
  void block(NoticeKind kind, std::string message) { notices_.push_back({kind, std::move(message)}); }

  void ensure_virama() {
    if (tail_of(pre_) == Tail::Bare) pre_.push_back(Element::virama());
  }

  // c, virama, c: the tap sequence c f c. A rejected second c keeps the
  // first two, as the taps would.
  bool sva_ottu(Consonant c) {
    if (!consonant(c)) return false;
    ensure_virama();
    consonant(c);
    return true;
  }

  bool ends_with_pure_vowel_syllable() const {
    const auto units = segment_units(pre_);
    if (units.empty() || units.back().kind != UnitKind::Syllable || units.back().end != pre_.size()) return false;
    return units.back().syllable.is_pure_vowel();
  }

  bool kandante(Consonant c) {
    const Tail tail = tail_of(pre_);
    if (tail == Tail::Bare) {
      const Consonant prev = *pre_.back().phoneme.consonant_id();
      if (config_.strict_rules && !is_legal_cluster(prev, c)) {
        block(NoticeKind::IllegalAspiratedCluster,
              std::string(name(prev)) + " cannot take " + std::string(name(c)) + " as ottu");
        return false;
      }
      pre_.push_back(Element::virama());
      return consonant(c);
    }
    if (tail == Tail::Open) return consonant(c);
    if ((tail == Tail::Closed || tail == Tail::Marked) && ends_with_pure_vowel_syllable()) {
      // Nothing to attach to after an independent vowel: the ottu is the
      // consonant's own (ಅ + k⁺ -> ಅಕ್ಕ).
      return sva_ottu(c);
    }
    notices_.push_back({NoticeKind::KandanteUnattached, "no open consonant to take the ottu; typed as a tap"});
    return consonant(c);
  }

  std::vector<Element>& pre_;
  const ComposerConfig& config_;
  std::vector<Notice>& notices_;
};

inline std::size_t scalar_width(std::span<const Element> e, std::size_t i) {
  if (e[i].kind == ElementKind::Seam) return 0;
  if (e[i].is_vowel() && e[i].phoneme.vowel_id() == Vowel::A && i > 0 && e[i - 1].is_consonant()) return 0;
  return 1;
}

// Seams only matter between two neighbours that are not already separated.
inline void normalize_seams(EditorBuffer& b) {
  auto& e = b.elements;
  for (std::size_t i = 0; i < e.size();) {
    const bool drop = e[i].kind == ElementKind::Seam &&
                      (i == 0 || i + 1 == e.size() || e[i - 1].is_barrier() || e[i + 1].is_barrier() ||
                       e[i - 1].kind == ElementKind::Seam);
    if (!drop) {
      ++i;
      continue;
    }
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
    if (b.cursor > i) --b.cursor;
  }
}

// Erase [from, b.cursor). A removed space leaves a seam so the neighbours
// never merge under the convenience rules.
inline void erase_left(EditorBuffer& b, std::size_t from) {
  auto& e = b.elements;
  const bool removed_space =
      std::any_of(e.begin() + static_cast<std::ptrdiff_t>(from), e.begin() + static_cast<std::ptrdiff_t>(b.cursor),
                  [](const Element& el) { return el.kind == ElementKind::Space; });
  e.erase(e.begin() + static_cast<std::ptrdiff_t>(from), e.begin() + static_cast<std::ptrdiff_t>(b.cursor));
  b.cursor = from;
  if (removed_space) {
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(from), Element::seam());
    ++b.cursor;
  }
}

inline const Unit* unit_containing(const std::vector<Unit>& units, std::size_t index) {
  for (const Unit& u : units)
    if (u.begin <= index && index < u.end) return &u;
  return nullptr;
}

}  // namespace detail

/// Delete left of the cursor at the given granularity. Convenience rules are
/// never re-run on what remains.
inline EditorBuffer delete_left(EditorBuffer b, DeleteGranularity granularity) {
  b.pending_hold.reset();
  if (b.cursor == 0) return b;
  auto& e = b.elements;

  switch (granularity) {
    case DeleteGranularity::Phoneme: {
      // A seam never absorbs a keystroke: step over it to the next element.
      std::size_t from = b.cursor - 1;
      while (from > 0 && e[from].kind == ElementKind::Seam) --from;
      if (e[from].kind == ElementKind::Seam) {
        detail::erase_left(b, from);
        break;
      }
      detail::erase_left(b, from);
      break;
    }
    case DeleteGranularity::Character: {
      std::size_t from = b.cursor;
      while (from > 0 && detail::scalar_width(e, from - 1) == 0) --from;
      if (from > 0) --from;
      detail::erase_left(b, from);
      break;
    }
    case DeleteGranularity::Syllable: {
      const auto units = segment_units(e);
      const Unit* unit = detail::unit_containing(units, b.cursor - 1);
      detail::erase_left(b, unit ? unit->begin : b.cursor - 1);
      break;
    }
    case DeleteGranularity::Word: {
      std::size_t from = b.cursor;
      while (from > 0 && (e[from - 1].kind == ElementKind::Space || e[from - 1].kind == ElementKind::Seam)) --from;
      while (from > 0 && !e[from - 1].is_barrier()) --from;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(from), e.begin() + static_cast<std::ptrdiff_t>(b.cursor));
      b.cursor = from;
      break;
    }
  }
  detail::normalize_seams(b);
  return b;
}

enum class CursorMotion : std::uint8_t { Left, Right, Home, End };

/// Cursor moves by whole units (syllable or barrier).
inline EditorBuffer move_cursor(EditorBuffer b, CursorMotion motion) {
  b.pending_hold.reset();
  const auto units = segment_units(b.elements);
  switch (motion) {
    case CursorMotion::Home: b.cursor = 0; break;
    case CursorMotion::End: b.cursor = b.elements.size(); break;
    case CursorMotion::Left:
      if (b.cursor > 0) {
        const Unit* u = detail::unit_containing(units, b.cursor - 1);
        b.cursor = u ? u->begin : b.cursor - 1;
      }
      break;
    case CursorMotion::Right:
      if (b.cursor < b.elements.size()) {
        const Unit* u = detail::unit_containing(units, b.cursor);
        b.cursor = u ? u->end : b.cursor + 1;
      }
      break;
  }
  return b;
}

/// Apply one resolved key action. Blocked input leaves the buffer unchanged
/// and reports why in the notices.
inline ApplyResult apply(const EditorBuffer& buffer, const KeyAction& action, const ComposerConfig& config) {
  if (action.kind == ActionKind::Delete) {
    return {delete_left(buffer, action.delete_granularity.value_or(DeleteGranularity::Phoneme)), {}};
  }

  ApplyResult result{buffer, {}};
  const auto cursor = static_cast<std::ptrdiff_t>(std::min(buffer.cursor, buffer.elements.size()));
  std::vector<Element> pre(buffer.elements.begin(), buffer.elements.begin() + cursor);
  const std::vector<Element> post(buffer.elements.begin() + cursor, buffer.elements.end());
  std::optional<Consonant> pending;

  detail::Composition comp(pre, config, result.notices);
  bool accepted = true;
  switch (action.kind) {
    case ActionKind::PhonemeInput: {
      if (!action.phoneme) break;
      const Phoneme p = *action.phoneme;
      switch (p.kind()) {
        case PhonemeKind::Consonant: {
          const Consonant c = *p.consonant_id();
          if (action.held && config.ohok_mode != OhokMode::Off) {
            accepted = comp.hold(c);
            if (accepted && (config.ohok_mode == OhokMode::Andante || config.ohok_mode == OhokMode::Kandante)) {
              pending = c;
            }
          } else {
            accepted = comp.consonant(c);
          }
          break;
        }
        case PhonemeKind::Vowel: accepted = comp.vowel(*p.vowel_id()); break;
        case PhonemeKind::NullVowel: accepted = comp.virama(); break;
        case PhonemeKind::Anusvara:
        case PhonemeKind::Visarga: accepted = comp.final_mark(p); break;
      }
      break;
    }
    case ActionKind::Digit:
      if (action.digit) {
        const auto d = static_cast<char32_t>(*action.digit);
        pre.push_back(Element::text(config.numerals == Numerals::Kannada ? codepoint::kKannadaDigitZero + d
                                                                          : U'0' + d));
      }
      break;
    case ActionKind::Passthrough:
      if (action.text != 0) pre.push_back(Element::text(action.text));
      break;
    case ActionKind::SpaceBarrier: pre.push_back(Element::space()); break;
    case ActionKind::Zwj: pre.push_back(Element::zwj()); break;
    case ActionKind::Zwnj: pre.push_back(Element::zwnj()); break;
    case ActionKind::Delete: break;
  }

  if (!accepted) {
    result.buffer = buffer;
    return result;
  }
  result.buffer.cursor = pre.size();
  pre.insert(pre.end(), post.begin(), post.end());
  result.buffer.elements = std::move(pre);
  result.buffer.pending_hold = pending;
  return result;
}

}  // namespace kannudi

#endif  // KANNUDI_COMPOSER_HPP
