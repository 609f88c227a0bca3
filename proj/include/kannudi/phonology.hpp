#ifndef KANNUDI_PHONOLOGY_HPP
#define KANNUDI_PHONOLOGY_HPP

// Kannada sound and script model: the phoneme inventory, consonant classes,
// vowel forms and the mapping from syllables to Kannada codepoints.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kannudi {

enum class Vowel : std::uint8_t { A, AA, I, II, U, UU, RU, E, EE, AI, O, OO, AU };

enum class Consonant : std::uint8_t {
  Ka, Kha, Ga, Gha, Nga,
  Ca, Cha, Ja, Jha, Nya,
  Tta, Ttha, Dda, Ddha, Nna,
  Ta, Tha, Da, Dha, Na,
  Pa, Pha, Ba, Bha, Ma,
  Ya, Ra, La, Va, Sha, Ssa, Sa, Ha, Lla,
};

inline constexpr std::size_t kVowelCount = 13;
inline constexpr std::size_t kConsonantCount = 34;

enum class PhonemeKind : std::uint8_t { Vowel, Consonant, Anusvara, Visarga, NullVowel };

namespace codepoint {
inline constexpr char32_t kAnusvara = 0x0C82;
inline constexpr char32_t kVisarga = 0x0C83;
inline constexpr char32_t kVirama = 0x0CCD;
inline constexpr char32_t kZwnj = 0x200C;
inline constexpr char32_t kZwj = 0x200D;
inline constexpr char32_t kKannadaDigitZero = 0x0CE6;
}  // namespace codepoint

/// One unit of input. Vowel and consonant payloads are present only for
/// their own kinds; NullVowel is the virama.
class Phoneme {
 public:
  static constexpr Phoneme vowel(Vowel v) { return Phoneme(PhonemeKind::Vowel, static_cast<std::uint8_t>(v)); }
  static constexpr Phoneme consonant(Consonant c) {
    return Phoneme(PhonemeKind::Consonant, static_cast<std::uint8_t>(c));
  }
  static constexpr Phoneme anusvara() { return Phoneme(PhonemeKind::Anusvara, 0); }
  static constexpr Phoneme visarga() { return Phoneme(PhonemeKind::Visarga, 0); }
  static constexpr Phoneme virama() { return Phoneme(PhonemeKind::NullVowel, 0); }

  constexpr PhonemeKind kind() const { return kind_; }
  constexpr bool is_vowel() const { return kind_ == PhonemeKind::Vowel; }
  constexpr bool is_consonant() const { return kind_ == PhonemeKind::Consonant; }
  constexpr bool is_virama() const { return kind_ == PhonemeKind::NullVowel; }
  constexpr bool is_final_mark() const {
    return kind_ == PhonemeKind::Anusvara || kind_ == PhonemeKind::Visarga;
  }

  constexpr std::optional<Vowel> vowel_id() const {
    if (kind_ != PhonemeKind::Vowel) return std::nullopt;
    return static_cast<Vowel>(id_);
  }
  constexpr std::optional<Consonant> consonant_id() const {
    if (kind_ != PhonemeKind::Consonant) return std::nullopt;
    return static_cast<Consonant>(id_);
  }

  friend constexpr bool operator==(const Phoneme&, const Phoneme&) = default;

 private:
  constexpr Phoneme(PhonemeKind kind, std::uint8_t id) : kind_(kind), id_(id) {}
  PhonemeKind kind_;
  std::uint8_t id_;
};

enum class Varga : std::uint8_t { Velar, Palatal, Retroflex, Dental, Labial, Unclassified };

struct ConsonantTraits {
  Varga varga = Varga::Unclassified;
  std::optional<int> position_in_varga;  // 1..5, 5 is the class nasal
  bool aspirated = false;
  bool nasal = false;

  friend bool operator==(const ConsonantTraits&, const ConsonantTraits&) = default;
};

struct VowelForm {
  char32_t independent;
  char32_t matra;  // 0 for the inherent vowel a
};

namespace detail {

struct ConsonantEntry {
  std::string_view name;
  char32_t base;
};

struct VowelEntry {
  std::string_view name;
  VowelForm form;
};

inline constexpr std::array<ConsonantEntry, kConsonantCount> kConsonants{{
    {"ka", 0x0C95}, {"kha", 0x0C96}, {"ga", 0x0C97}, {"gha", 0x0C98}, {"nga", 0x0C99},
    {"ca", 0x0C9A}, {"cha", 0x0C9B}, {"ja", 0x0C9C}, {"jha", 0x0C9D}, {"nya", 0x0C9E},
    {"tta", 0x0C9F}, {"ttha", 0x0CA0}, {"dda", 0x0CA1}, {"ddha", 0x0CA2}, {"nna", 0x0CA3},
    {"ta", 0x0CA4}, {"tha", 0x0CA5}, {"da", 0x0CA6}, {"dha", 0x0CA7}, {"na", 0x0CA8},
    {"pa", 0x0CAA}, {"pha", 0x0CAB}, {"ba", 0x0CAC}, {"bha", 0x0CAD}, {"ma", 0x0CAE},
    {"ya", 0x0CAF}, {"ra", 0x0CB0}, {"la", 0x0CB2}, {"va", 0x0CB5}, {"sha", 0x0CB6},
    {"ssa", 0x0CB7}, {"sa", 0x0CB8}, {"ha", 0x0CB9}, {"lla", 0x0CB3},
}};

// Matras are the precomposed (NFC) code points.
inline constexpr std::array<VowelEntry, kVowelCount> kVowels{{
    {"a", {0x0C85, 0}},
    {"aa", {0x0C86, 0x0CBE}},
    {"i", {0x0C87, 0x0CBF}},
    {"ii", {0x0C88, 0x0CC0}},
    {"u", {0x0C89, 0x0CC1}},
    {"uu", {0x0C8A, 0x0CC2}},
    {"ru", {0x0C8B, 0x0CC3}},
    {"e", {0x0C8E, 0x0CC6}},
    {"ee", {0x0C8F, 0x0CC7}},
    {"ai", {0x0C90, 0x0CC8}},
    {"o", {0x0C92, 0x0CCA}},
    {"oo", {0x0C93, 0x0CCB}},
    {"au", {0x0C94, 0x0CCC}},
}};

}  // namespace detail

inline constexpr std::array<Vowel, kVowelCount> all_vowels() {
  std::array<Vowel, kVowelCount> out{};
  for (std::size_t i = 0; i < kVowelCount; ++i) out[i] = static_cast<Vowel>(i);
  return out;
}

inline constexpr std::array<Consonant, kConsonantCount> all_consonants() {
  std::array<Consonant, kConsonantCount> out{};
  for (std::size_t i = 0; i < kConsonantCount; ++i) out[i] = static_cast<Consonant>(i);
  return out;
}

/// Every phoneme of the inventory: vowels, consonants, anusvara, visarga and
/// the virama.
inline std::vector<Phoneme> phoneme_inventory() {
  std::vector<Phoneme> out;
  for (Vowel v : all_vowels()) out.push_back(Phoneme::vowel(v));
  for (Consonant c : all_consonants()) out.push_back(Phoneme::consonant(c));
  out.push_back(Phoneme::anusvara());
  out.push_back(Phoneme::visarga());
  out.push_back(Phoneme::virama());
  return out;
}

inline constexpr std::string_view name(Vowel v) { return detail::kVowels[static_cast<std::size_t>(v)].name; }
inline constexpr std::string_view name(Consonant c) {
  return detail::kConsonants[static_cast<std::size_t>(c)].name;
}

inline std::string name(Phoneme p) {
  switch (p.kind()) {
    case PhonemeKind::Vowel: return std::string(name(*p.vowel_id()));
    case PhonemeKind::Consonant: return std::string(name(*p.consonant_id()));
    case PhonemeKind::Anusvara: return "anusvara";
    case PhonemeKind::Visarga: return "visarga";
    case PhonemeKind::NullVowel: return "virama";
  }
  return {};
}

/// Inverse of name(); accepts the canonical ASCII names used by layout files.
inline std::optional<Phoneme> phoneme_from_name(std::string_view n) {
  if (n == "virama" || n == "null") return Phoneme::virama();
  if (n == "anusvara") return Phoneme::anusvara();
  if (n == "visarga") return Phoneme::visarga();
  for (Vowel v : all_vowels())
    if (name(v) == n) return Phoneme::vowel(v);
  for (Consonant c : all_consonants())
    if (name(c) == n) return Phoneme::consonant(c);
  return std::nullopt;
}

inline constexpr VowelForm vowel_form(Vowel v) { return detail::kVowels[static_cast<std::size_t>(v)].form; }
inline constexpr char32_t consonant_base(Consonant c) {
  return detail::kConsonants[static_cast<std::size_t>(c)].base;
}

inline std::optional<Consonant> consonant_from_codepoint(char32_t cp) {
  for (Consonant c : all_consonants())
    if (consonant_base(c) == cp) return c;
  return std::nullopt;
}

inline std::optional<Vowel> vowel_from_independent(char32_t cp) {
  for (Vowel v : all_vowels())
    if (vowel_form(v).independent == cp) return v;
  return std::nullopt;
}

inline std::optional<Vowel> vowel_from_matra(char32_t cp) {
  if (cp == 0) return std::nullopt;
  for (Vowel v : all_vowels())
    if (vowel_form(v).matra == cp) return v;
  return std::nullopt;
}

inline constexpr ConsonantTraits consonant_traits(Consonant c) {
  const auto index = static_cast<int>(c);
  if (index >= 25) return ConsonantTraits{};
  const int position = index % 5 + 1;
  return ConsonantTraits{
      .varga = static_cast<Varga>(index / 5),
      .position_in_varga = position,
      .aspirated = position == 2 || position == 4,
      .nasal = position == 5,
  };
}

inline constexpr bool is_aspirated(Consonant c) { return consonant_traits(c).aspirated; }

/// Any nasal letter: the five class nasals. Dental na and labial ma are the
/// two that the anusvara conversion considers.
inline constexpr bool is_nasal(Consonant c) { return consonant_traits(c).nasal; }

/// Whether `second` may follow `first` as its ottu (first + virama + second).
/// An aspirate cannot take another aspirate as ottu.
inline constexpr bool is_legal_cluster(Consonant first, Consonant second) {
  return !(is_aspirated(first) && is_aspirated(second));
}

enum class FinalMark : std::uint8_t { Anusvara, Visarga };

enum class OverrideKind : std::uint8_t { Zwj, Zwnj, RuleSuppressed };

/// A joiner or rule-suppression mark. `slot` counts the syllable's phonemes
/// (onset consonants, linking viramas, vowel, final mark, trailing virama)
/// that precede the mark in storage order.
struct OverrideMark {
  OverrideKind kind;
  std::size_t slot;

  friend bool operator==(const OverrideMark&, const OverrideMark&) = default;
};

struct Syllable {
  std::vector<Consonant> onset;  // first is the base, the rest are ottus
  std::optional<Vowel> vowel;
  std::optional<FinalMark> final_mark;
  bool trailing_virama = false;  // vowel-less cluster (end-virama)
  bool word_initial = false;
  std::vector<OverrideMark> overrides;

  bool is_pure_vowel() const { return onset.empty(); }
  bool rule_suppressed() const { return !overrides.empty(); }
  /// Number of phoneme slots (see OverrideMark::slot).
  std::size_t phoneme_count() const {
    std::size_t n = onset.empty() ? 0 : 2 * onset.size() - 1;
    if (vowel) ++n;
    if (final_mark) ++n;
    if (trailing_virama) ++n;
    return n;
  }

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class MalformedSyllable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Check the structural invariants of a syllable; the message names the
/// violated invariant.
inline std::optional<std::string> syllable_violation(const Syllable& s) {
  if (s.onset.empty() && !s.vowel) return "onset may be empty only if a vowel is present";
  if (s.trailing_virama && s.onset.empty()) return "a trailing virama needs a consonant";
  if (s.trailing_virama && s.vowel) return "a trailing virama excludes a vowel";
  if (s.trailing_virama && s.final_mark) return "a trailing virama excludes a final mark";
  for (const auto& m : s.overrides)
    if (m.slot > s.phoneme_count()) return "override mark slot beyond the syllable";
  return std::nullopt;
}

/// Storage-order codepoints: base, (virama, ottu)*, then the vowel sign (none
/// for a) or the independent vowel, the final mark, a trailing virama, with
/// joiners at their recorded slots.
inline std::u32string render_syllable(const Syllable& s) {
  if (auto why = syllable_violation(s)) throw MalformedSyllable(*why);

  std::u32string out;
  std::size_t slot = 0;
  auto marks_at = [&](std::size_t at) {
    for (const auto& m : s.overrides) {
      if (m.slot != at) continue;
      if (m.kind == OverrideKind::Zwj) out.push_back(codepoint::kZwj);
      if (m.kind == OverrideKind::Zwnj) out.push_back(codepoint::kZwnj);
    }
  };
  auto emit = [&](char32_t cp) {
    marks_at(slot);
    if (cp != 0) out.push_back(cp);
    ++slot;
  };

  for (std::size_t i = 0; i < s.onset.size(); ++i) {
    if (i > 0) emit(codepoint::kVirama);
    emit(consonant_base(s.onset[i]));
  }
  if (s.vowel) {
    const VowelForm form = vowel_form(*s.vowel);
    emit(s.onset.empty() ? form.independent : form.matra);
  }
  if (s.final_mark) {
    emit(*s.final_mark == FinalMark::Anusvara ? codepoint::kAnusvara : codepoint::kVisarga);
  }
  if (s.trailing_virama) emit(codepoint::kVirama);
  marks_at(slot);
  return out;
}

}  // namespace kannudi

#endif  // KANNUDI_PHONOLOGY_HPP
