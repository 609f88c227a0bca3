#include <gtest/gtest.h>

#include "kannudi/analyzer.hpp"
#include "support.hpp"

using namespace kannudi;

namespace {

constexpr OhokMode kModes[] = {OhokMode::Off, OhokMode::SvaOttu, OhokMode::Kandante, OhokMode::Andante};

}  // namespace

TEST(Oracle, CheapestTraces) {
  EXPECT_EQ(kt::min_keystrokes(U"ಕ್ಕ", kt::config()), 3);
  EXPECT_EQ(kt::min_keystrokes(U"ಕ್ಕ", kt::config(DefaultVowel::InherentA, OhokMode::SvaOttu)), 1);
  EXPECT_EQ(kt::min_keystrokes(U"ಕ್ಕ", kt::config(DefaultVowel::Null)), 3);
  EXPECT_EQ(kt::min_keystrokes(U"ಕನ್ನಡ", kt::config()), 5);
  EXPECT_EQ(kt::min_keystrokes(U"ಕನ್ನಡ", kt::config(DefaultVowel::InherentA, OhokMode::SvaOttu)), 3);
  EXPECT_EQ(kt::min_keystrokes(U"ಸ್ತ್ರೀ", kt::config()), 6);
  EXPECT_EQ(kt::min_keystrokes(U"ಸ್ತ್ರೀ", kt::config(DefaultVowel::InherentA, OhokMode::Andante)), 4);
}

TEST(Oracle, SyntheticCorpusClassifies) {
  const SyllableCounts c = count_syllables(kt::synthetic_corpus_text());
  EXPECT_EQ(c.total(), 1000u);
  EXPECT_EQ(c[SyllableClass::Mula], 424u);
  EXPECT_EQ(c[SyllableClass::Guni], 394u);
  EXPECT_EQ(c[SyllableClass::DvitvaPlain], 76u);
  EXPECT_EQ(c[SyllableClass::DvitvaPostVowel], 11u);
  EXPECT_EQ(c[SyllableClass::Vijati], 88u);
  EXPECT_EQ(c[SyllableClass::EndVirama], 7u);
  EXPECT_EQ(c.anusvara, 56u);
}

TEST(Oracle, SimulationMatchesAnalyticSavings) {
  const FrequencyTable synthetic = classify_corpus(kt::synthetic_corpus_text());
  const FrequencyTable ref = FrequencyTable::reference();
  for (DefaultVowel v : {DefaultVowel::InherentA, DefaultVowel::Null}) {
    for (OhokMode m : kModes) {
      const long simulated = kt::simulated_savings(v, m);
      EXPECT_NEAR(savings_per_1000(synthetic, v, m).keys_saved_per_1000, simulated, 1e-9)
          << regime_name(v) << "/" << mode_name(m);
      // The synthetic corpus shares the reference ottu rows, so the savings agree too.
      EXPECT_NEAR(savings_per_1000(ref, v, m).keys_saved_per_1000, simulated, 1e-9)
          << regime_name(v) << "/" << mode_name(m);
    }
  }
}

TEST(Oracle, GainFromPerClassCosts) {
  // Null-regime key tables leave out the closing vowel key, so the gain is
  // recomputed from the per-class costs rather than from whole-word traces.
  const FrequencyTable t = FrequencyTable::reference();
  double gain = 0;
  for (SyllableClass c : kSyllableClasses) {
    const int extra = keystrokes_for(c, DefaultVowel::Null, OhokMode::Off) -
                      keystrokes_for(c, DefaultVowel::InherentA, OhokMode::Off);
    gain += t.per_1000(c) * extra;
  }
  EXPECT_NEAR(gain, 242, 1e-9);
  EXPECT_NEAR(default_vowel_gain(classify_corpus(kt::synthetic_corpus_text())), 242, 1e-9);
}
