#ifndef KANNUDI_ANALYZER_HPP
#define KANNUDI_ANALYZER_HPP

// Syllable-frequency classification of Kannada text and the keystroke
// savings model for the OHOK modes.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kannudi/composer.hpp"
#include "kannudi/phonology.hpp"

namespace kannudi {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exclusive classes. Sajati dvitva is split into its plain and post-vowel
/// parts; every syllable falls in exactly one class.
enum class SyllableClass : std::uint8_t { Mula, Guni, DvitvaPlain, DvitvaPostVowel, Vijati, EndVirama };

inline constexpr std::array<SyllableClass, 6> kSyllableClasses{
    SyllableClass::Mula,   SyllableClass::Guni,      SyllableClass::DvitvaPlain,
    SyllableClass::DvitvaPostVowel, SyllableClass::Vijati, SyllableClass::EndVirama};

inline constexpr std::array<SyllableClass, 4> kOttuClasses{SyllableClass::DvitvaPlain, SyllableClass::DvitvaPostVowel,
                                                           SyllableClass::Vijati, SyllableClass::EndVirama};

inline std::string_view class_name(SyllableClass c) {
  switch (c) {
    case SyllableClass::Mula: return "mula";
    case SyllableClass::Guni: return "gunitakshara";
    case SyllableClass::DvitvaPlain: return "dvitva";
    case SyllableClass::DvitvaPostVowel: return "dvitva_post_vowel";
    case SyllableClass::Vijati: return "vijati";
    case SyllableClass::EndVirama: return "end_virama";
  }
  return "unknown";
}

inline std::string_view mode_name(OhokMode m) {
  switch (m) {
    case OhokMode::Off: return "off";
    case OhokMode::SvaOttu: return "so";
    case OhokMode::Kandante: return "ko";
    case OhokMode::Andante: return "ao";
  }
  return "unknown";
}

inline std::string_view regime_name(DefaultVowel v) { return v == DefaultVowel::InherentA ? "a" : "null"; }

/// Classify one syllable. `after_pure_vowel` is true when the previous
/// syllable of the same word is a bare vowel (with optional anusvara/visarga).
inline SyllableClass classify_syllable(const Syllable& s, bool after_pure_vowel) {
  if (s.trailing_virama) return SyllableClass::EndVirama;
  if (s.onset.size() >= 2) {
    if (s.onset.size() == 2 && s.onset[0] == s.onset[1]) {
      return after_pure_vowel ? SyllableClass::DvitvaPostVowel : SyllableClass::DvitvaPlain;
    }
    return SyllableClass::Vijati;
  }
  if (s.onset.empty() || s.vowel.value_or(Vowel::A) == Vowel::A) return SyllableClass::Mula;
  return SyllableClass::Guni;
}

/// Raw tallies. Summation is the only aggregation, so per-file counts can
/// be merged in any order.
struct SyllableCounts {
  std::array<std::uint64_t, kSyllableClasses.size()> by_class{};
  std::uint64_t anusvara = 0;

  std::uint64_t& operator[](SyllableClass c) { return by_class[static_cast<std::size_t>(c)]; }
  std::uint64_t operator[](SyllableClass c) const { return by_class[static_cast<std::size_t>(c)]; }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto n : by_class) t += n;
    return t;
  }

  SyllableCounts& operator+=(const SyllableCounts& o) {
    for (std::size_t i = 0; i < by_class.size(); ++i) by_class[i] += o.by_class[i];
    anusvara += o.anusvara;
    return *this;
  }

  friend bool operator==(const SyllableCounts&, const SyllableCounts&) = default;
};

inline SyllableCounts count_syllables(std::span<const Element> elements) {
  SyllableCounts counts;
  const auto units = segment_units(elements);
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i].kind != UnitKind::Syllable) continue;
    const Syllable& s = units[i].syllable;
    const bool after_vowel = i > 0 && units[i - 1].kind == UnitKind::Syllable &&
                             units[i - 1].end == units[i].begin && units[i - 1].syllable.is_pure_vowel();
    ++counts[classify_syllable(s, after_vowel)];
    if (s.final_mark == FinalMark::Anusvara) ++counts.anusvara;
  }
  return counts;
}

inline SyllableCounts count_syllables(std::string_view utf8_text) {
  return count_syllables(parse_text(utf8_text).elements);
}

/// Table-1-shaped fractions of all syllables. Post-vowel dvitva is nested
/// inside sajati dvitva.
struct FrequencyTable {
  double mula_akshara = 0;
  double gunitakshara = 0;
  double anusvara_sonne = 0;
  double ottu_total = 0;
  double sajati_dvitva = 0;
  double dvitva_post_vowel = 0;
  double vijati = 0;
  double end_virama = 0;

  /// Instances per 1000 syllables of an exclusive class.
  double per_1000(SyllableClass c) const {
    switch (c) {
      case SyllableClass::Mula: return mula_akshara * 1000;
      case SyllableClass::Guni: return gunitakshara * 1000;
      case SyllableClass::DvitvaPlain: return (sajati_dvitva - dvitva_post_vowel) * 1000;
      case SyllableClass::DvitvaPostVowel: return dvitva_post_vowel * 1000;
      case SyllableClass::Vijati: return vijati * 1000;
      case SyllableClass::EndVirama: return end_virama * 1000;
    }
    return 0;
  }

  static FrequencyTable from_counts(const SyllableCounts& c) {
    const std::uint64_t total = c.total();
    if (total == 0) throw AnalysisError("no Kannada syllables");
    const auto t = static_cast<double>(total);
    auto frac = [t](std::uint64_t n) { return static_cast<double>(n) / t; };
    FrequencyTable f;
    f.mula_akshara = frac(c[SyllableClass::Mula]);
    f.gunitakshara = frac(c[SyllableClass::Guni]);
    f.anusvara_sonne = frac(c.anusvara);
    f.dvitva_post_vowel = frac(c[SyllableClass::DvitvaPostVowel]);
    f.sajati_dvitva = frac(c[SyllableClass::DvitvaPlain] + c[SyllableClass::DvitvaPostVowel]);
    f.vijati = frac(c[SyllableClass::Vijati]);
    f.end_virama = frac(c[SyllableClass::EndVirama]);
    f.ottu_total = frac(c[SyllableClass::DvitvaPlain] + c[SyllableClass::DvitvaPostVowel] +
                        c[SyllableClass::Vijati] + c[SyllableClass::EndVirama]);
    return f;
  }

  /// Reference syllable frequencies.
  static FrequencyTable reference() {
    FrequencyTable f;
    f.mula_akshara = 0.424;
    f.gunitakshara = 0.393;
    f.anusvara_sonne = 0.056;
    f.ottu_total = 0.182;
    f.sajati_dvitva = 0.087;
    f.dvitva_post_vowel = 0.011;
    f.vijati = 0.088;
    f.end_virama = 0.007;
    return f;
  }
};

inline FrequencyTable classify_corpus(std::string_view utf8_text) {
  return FrequencyTable::from_counts(count_syllables(utf8_text));
}

inline std::string read_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnalysisError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Count each file on its own thread and sum.
inline SyllableCounts count_files(const std::vector<std::string>& paths) {
  std::vector<std::future<SyllableCounts>> jobs;
  jobs.reserve(paths.size());
  for (const auto& path : paths) {
    jobs.push_back(std::async(std::launch::async, [path] {
      const std::string text = read_corpus_file(path);
      try {
        return count_syllables(std::string_view(text));
      } catch (const std::invalid_argument& e) {
        throw AnalysisError(path + ": " + e.what());
      }
    }));
  }
  SyllableCounts total;
  for (auto& job : jobs) total += job.get();
  return total;
}

// ---------------------------------------------------------------------------
// Keystroke model

/// Consonant-and-virama keys needed for one instance of an ottu class (the
/// vowel key, common to all modes, is not counted). Mula and gunitakshara
/// count their vowel key where the regime needs one.
inline int keystrokes_for(SyllableClass c, DefaultVowel regime, OhokMode mode) {
  const bool null = regime == DefaultVowel::Null;
  switch (c) {
    case SyllableClass::Mula: return null ? 2 : 1;  // k a | k
    case SyllableClass::Guni: return 2;             // k i
    default: break;
  }
  // Rows: dvitva, post-vowel dvitva, vijati, end virama. Columns: off, so, ko, ao.
  static constexpr int kInherentA[4][4] = {{3, 1, 2, 2}, {3, 1, 1, 2}, {3, 3, 2, 2}, {2, 2, 2, 1}};
  static constexpr int kNull[4][4] = {{2, 1, 2, 2}, {2, 1, 1, 2}, {2, 2, 2, 2}, {1, 1, -1, 1}};
  const auto row = static_cast<std::size_t>(c) - static_cast<std::size_t>(SyllableClass::DvitvaPlain);
  const auto col = static_cast<std::size_t>(mode);
  const int keys = null ? kNull[row][col] : kInherentA[row][col];
  if (keys < 0) {
    throw UnsupportedCombination(std::string(class_name(c)) + " cannot be typed in mode " +
                                 std::string(mode_name(mode)) + " with null default");
  }
  return keys;
}

struct SavingsLine {
  SyllableClass syllable_class;
  bool supported = true;
  int saved_per_instance = 0;
  double instances_per_1000 = 0;
  double contribution = 0;
};

struct SavingsReport {
  DefaultVowel default_vowel;
  OhokMode mode;
  double keys_saved_per_1000 = 0;
  std::vector<SavingsLine> breakdown;
};

inline SavingsReport savings_per_1000(const FrequencyTable& freq, DefaultVowel regime, OhokMode mode) {
  SavingsReport report{regime, mode, 0, {}};
  for (SyllableClass c : kOttuClasses) {
    SavingsLine line{c, true, 0, freq.per_1000(c), 0};
    try {
      line.saved_per_instance = keystrokes_for(c, regime, OhokMode::Off) - keystrokes_for(c, regime, mode);
      line.contribution = line.saved_per_instance * line.instances_per_1000;
    } catch (const UnsupportedCombination&) {
      line.supported = false;
    }
    report.keys_saved_per_1000 += line.contribution;
    report.breakdown.push_back(line);
  }
  return report;
}

/// Keys saved per 1000 syllables by the a-default over the null default.
inline double default_vowel_gain(const FrequencyTable& freq) {
  return (freq.mula_akshara - freq.ottu_total) * 1000;
}

/// Reference savings figures, keys per 1000 syllables.
inline std::optional<int> reference_savings(DefaultVowel regime, OhokMode mode) {
  static constexpr int kInherentA[4] = {0, 174, 196, 193};
  static constexpr int kNull[4] = {0, 87, 11, 0};
  const auto col = static_cast<std::size_t>(mode);
  return regime == DefaultVowel::InherentA ? kInherentA[col] : kNull[col];
}

inline std::optional<std::string> savings_note(DefaultVowel regime, OhokMode mode, double computed) {
  const auto ref = reference_savings(regime, mode);
  if (!ref || std::abs(computed - *ref) < 1e-6) return std::nullopt;
  std::ostringstream note;
  note << std::fixed << std::setprecision(0) << "computed " << computed << ", reference " << *ref << ": ";
  if (regime == DefaultVowel::InherentA && mode == OhokMode::Kandante) {
    note << "suspected transposition in the reference figure (87+88+11+0 = 186)";
  } else if (regime == DefaultVowel::InherentA && mode == OhokMode::Andante) {
    note << "reference figure adds post-vowel dvitva (11) on top of sajati dvitva (87), which already contains it";
  } else {
    note << "differs from the reference figure";
  }
  return note.str();
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat : std::uint8_t { Text, Csv };

inline std::string format_frequency_report(const SyllableCounts& counts, ReportFormat format) {
  const FrequencyTable f = FrequencyTable::from_counts(counts);
  const FrequencyTable ref = FrequencyTable::reference();
  struct Row {
    std::string_view name;
    double value;
    double reference;
  };
  const Row rows[] = {
      {"mula_akshara", f.mula_akshara, ref.mula_akshara},
      {"gunitakshara", f.gunitakshara, ref.gunitakshara},
      {"anusvara_sonne", f.anusvara_sonne, ref.anusvara_sonne},
      {"ottu_total", f.ottu_total, ref.ottu_total},
      {"sajati_dvitva", f.sajati_dvitva, ref.sajati_dvitva},
      {"dvitva_post_vowel", f.dvitva_post_vowel, ref.dvitva_post_vowel},
      {"vijati", f.vijati, ref.vijati},
      {"end_virama", f.end_virama, ref.end_virama},
  };
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "category,percent,reference_percent\n";
    out << std::fixed << std::setprecision(4);
    for (const Row& r : rows) out << r.name << ',' << r.value * 100 << ',' << r.reference * 100 << '\n';
    out << "syllables," << counts.total() << ",\n";
    return out.str();
  }
  out << "syllables: " << counts.total() << "\n";
  out << std::left << std::setw(20) << "category" << std::right << std::setw(9) << "percent" << std::setw(11)
      << "reference" << "\n";
  out << std::fixed << std::setprecision(1);
  for (const Row& r : rows) {
    const bool nested = r.name == "sajati_dvitva" || r.name == "dvitva_post_vowel" || r.name == "vijati" ||
                        r.name == "end_virama";
    std::string label = (nested ? "  " : "") + std::string(r.name);
    out << std::left << std::setw(20) << label << std::right << std::setw(8) << r.value * 100 << "%"
        << std::setw(10) << r.reference * 100 << "%\n";
  }
  return out.str();
}

inline std::string format_savings_grid(const FrequencyTable& freq, ReportFormat format) {
  constexpr std::array<OhokMode, 4> modes{OhokMode::Off, OhokMode::SvaOttu, OhokMode::Kandante, OhokMode::Andante};
  constexpr std::array<DefaultVowel, 2> regimes{DefaultVowel::InherentA, DefaultVowel::Null};
  std::ostringstream out;
  out << std::fixed << std::setprecision(0);

  if (format == ReportFormat::Csv) {
    out << "default_vowel,mode,keys_saved_per_1000,reference";
    for (SyllableClass c : kOttuClasses) out << ',' << class_name(c);
    out << ",note\n";
    for (DefaultVowel regime : regimes) {
      for (OhokMode mode : modes) {
        const SavingsReport r = savings_per_1000(freq, regime, mode);
        out << regime_name(regime) << ',' << mode_name(mode) << ',' << r.keys_saved_per_1000 << ','
            << reference_savings(regime, mode).value_or(0);
        for (const SavingsLine& line : r.breakdown) {
          out << ',';
          if (line.supported) out << line.contribution; else out << "X";
        }
        out << ',' << savings_note(regime, mode, r.keys_saved_per_1000).value_or("") << '\n';
      }
    }
    return out.str();
  }

  std::vector<std::string> notes;
  for (DefaultVowel regime : regimes) {
    out << "default vowel = " << regime_name(regime) << "\n";
    out << std::left << std::setw(6) << "mode" << std::right << std::setw(7) << "saved" << std::setw(11) << "reference";
    for (SyllableClass c : kOttuClasses) out << std::setw(19) << class_name(c);
    out << "\n";
    for (OhokMode mode : modes) {
      const SavingsReport r = savings_per_1000(freq, regime, mode);
      out << std::left << std::setw(6) << mode_name(mode) << std::right << std::setw(7) << r.keys_saved_per_1000
          << std::setw(11) << reference_savings(regime, mode).value_or(0);
      for (const SavingsLine& line : r.breakdown) {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(0);
        if (line.supported) {
          cell << line.saved_per_instance << "x" << line.instances_per_1000 << "=" << line.contribution;
        } else {
          cell << "X";
        }
        out << std::setw(19) << cell.str();
      }
      out << "\n";
      if (auto note = savings_note(regime, mode, r.keys_saved_per_1000)) {
        notes.push_back(std::string(regime_name(regime)) + "/" + std::string(mode_name(mode)) + ": " + *note);
      }
    }
    out << "\n";
  }
  out << "default vowel gain (a over null): " << default_vowel_gain(freq) << " per 1000\n";
  for (const std::string& n : notes) out << "note: " << n << "\n";
  return out.str();
}

}  // namespace kannudi

#endif  // KANNUDI_ANALYZER_HPP
