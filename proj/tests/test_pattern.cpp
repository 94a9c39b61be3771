#include <random>
#include <set>

#include <gtest/gtest.h>

#include "negseq/error.hpp"
#include "negseq/pattern.hpp"
#include "testing.hpp"

using namespace negseq;
using negseq::testing::example_database;
using negseq::testing::kGap01;
using negseq::testing::pat;

namespace {

class PatternTest : public ::testing::Test {
 protected:
  SequenceDatabase db = example_database();
  Item a = negseq::testing::item(db, "a");
  Item b = negseq::testing::item(db, "b");
  Item c = negseq::testing::item(db, "c");

  std::string fmt(const Pattern& p) const { return format_pattern(p, db.alphabet(), kGap01); }
};

TEST_F(PatternTest, PrefixDropsLastItemAndLastAnnotation) {
  EXPECT_EQ(fmt(prefix(pat(db, "a[0,1]a[0,1,!b]c"))), "a[0,1]a");
  EXPECT_EQ(fmt(prefix(pat(db, "a[0,1]a"))), "a");
  EXPECT_EQ(fmt(prefix(pat(db, "a[0,1,!a]a[0,1,!c]c"))), "a[0,1,!a]a");
}

TEST_F(PatternTest, SuffixDropsFirstItemAndFirstAnnotation) {
  EXPECT_EQ(fmt(suffix(pat(db, "a[0,1]a"))), "a");
  EXPECT_EQ(fmt(suffix(pat(db, "a[0,1,!b]c"))), "c");
  EXPECT_EQ(fmt(suffix(pat(db, "a[0,1,!a]a[0,1,!c]c"))), "a[0,1,!c]c");
}

TEST_F(PatternTest, PrefixAndSuffixRejectSingleItems) {
  EXPECT_THROW(prefix(Pattern::single(a)), std::invalid_argument);
  EXPECT_THROW(suffix(Pattern::single(a)), std::invalid_argument);
}

TEST_F(PatternTest, JoinAppendsLastGapOfRightPattern) {
  auto t = join(pat(db, "a[0,1]a"), pat(db, "a[0,1,!b]c"));
  ASSERT_TRUE(t);
  EXPECT_EQ(fmt(*t), "a[0,1]a[0,1,!b]c");
}

TEST_F(PatternTest, JoinFailsWhenSuffixDiffersFromPrefix) {
  EXPECT_FALSE(join(pat(db, "a[0,1]a"), pat(db, "b[0,1]c")));
  // Annotations take part in the comparison.
  EXPECT_FALSE(join(pat(db, "a[0,1]a[0,1,!b]c"), pat(db, "a[0,1]c[0,1]a")));
  EXPECT_TRUE(join(pat(db, "a[0,1]a[0,1,!b]c"), pat(db, "a[0,1,!b]c[0,1]a")));
}

TEST_F(PatternTest, JoinRejectsMismatchedLengths) {
  EXPECT_THROW(join(pat(db, "a[0,1]a"), pat(db, "a[0,1]a[0,1]a")), std::invalid_argument);
}

TEST_F(PatternTest, JoinOfTheFiveLengthTwoPatternsGivesTenCandidates) {
  const std::vector<std::string> level{"a[0,1]a", "a[0,1,!a]a", "a[0,1]c", "a[0,1,!b]c",
                                       "a[0,1,!c]c"};
  std::set<std::string> got;
  for (const auto& p : level) {
    for (const auto& q : level) {
      if (auto t = join(pat(db, p), pat(db, q))) got.insert(fmt(*t));
    }
  }
  const std::set<std::string> expected{
      "a[0,1]a[0,1]a",       "a[0,1]a[0,1,!a]a",       "a[0,1]a[0,1]c",
      "a[0,1]a[0,1,!b]c",    "a[0,1]a[0,1,!c]c",       "a[0,1,!a]a[0,1]a",
      "a[0,1,!a]a[0,1,!a]a", "a[0,1,!a]a[0,1]c",       "a[0,1,!a]a[0,1,!b]c",
      "a[0,1,!a]a[0,1,!c]c"};
  EXPECT_EQ(got, expected);
}

TEST_F(PatternTest, ParseReadsItemsAndAnnotations) {
  const auto p = pat(db, "a[0,1]a[0,1,!b]c");
  EXPECT_EQ(p.positives, (std::vector<Item>{a, a, c}));
  EXPECT_EQ(p.negatives, (std::vector<std::optional<Item>>{std::nullopt, b}));

  const auto single = pat(db, "a");
  EXPECT_EQ(single.positives, std::vector<Item>{a});
  EXPECT_TRUE(single.negatives.empty());
}

TEST_F(PatternTest, ParseRejectsGapOtherThanRunGap) {
  try {
    pat(db, "a[0,2]a");
    FAIL() << "expected a gap mismatch";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
    EXPECT_NE(std::string(e.what()).find("does not match"), std::string::npos);
  }
}

TEST_F(PatternTest, ParseReportsSyntaxErrors) {
  EXPECT_THROW(pat(db, ""), ParseError);
  EXPECT_THROW(pat(db, "ab"), ParseError);
  EXPECT_THROW(pat(db, "a[0,1"), ParseError);
  EXPECT_THROW(pat(db, "a[0,1]"), ParseError);
  EXPECT_THROW(pat(db, "a[0,1,b]c"), ParseError);
  EXPECT_THROW(pat(db, "a[0,1,!b,!c]c"), ParseError);
  EXPECT_THROW(pat(db, "a[x,1]c"), ParseError);
  EXPECT_THROW(pat(db, "a[0,1]z"), ParseError);
}

TEST_F(PatternTest, FormatWritesCanonicalText) {
  EXPECT_EQ(fmt(Pattern{{a, a, c}, {std::nullopt, b}}), "a[0,1]a[0,1,!b]c");
  EXPECT_EQ(fmt(Pattern::single(a)), "a");
  EXPECT_EQ(fmt(Pattern{{a, a}, {a}}), "a[0,1,!a]a");
}

TEST(PatternTokens, MultiCharacterItemsUnderTokenTokenizer) {
  Alphabet alphabet;
  alphabet.intern("login");
  alphabet.intern("pay");
  alphabet.intern("out");
  const GapConstraint gap(1, 3);
  const auto p = parse_pattern("login[1,3,!pay]out", alphabet, gap, Tokenizer::Token);
  EXPECT_EQ(p.length(), 2u);
  EXPECT_EQ(format_pattern(p, alphabet, gap), "login[1,3,!pay]out");
  EXPECT_THROW(parse_pattern("login[1,3]logout", alphabet, gap, Tokenizer::Token), ParseError);
}

TEST(GapConstraintTest, WidthAndValidation) {
  EXPECT_EQ(GapConstraint(0, 1).width(), 2u);
  EXPECT_EQ(GapConstraint(0, 15).width(), 16u);
  EXPECT_EQ(GapConstraint(3, 3).width(), 1u);
  EXPECT_THROW(GapConstraint(2, 1), std::invalid_argument);
}

TEST(PatternOrder, AbsentNegativeSortsFirst) {
  const Pattern plain{{Item{0}, Item{0}}, {std::nullopt}};
  const Pattern neg0{{Item{0}, Item{0}}, {Item{0}}};
  const Pattern neg1{{Item{0}, Item{0}}, {Item{1}}};
  const Pattern other{{Item{0}, Item{1}}, {std::nullopt}};
  EXPECT_LT(plain, neg0);
  EXPECT_LT(neg0, neg1);
  EXPECT_LT(neg1, other);
}

// Properties over random patterns: join inverts prefix/suffix, and text
// formatting round-trips.
TEST(PatternProperties, JoinRoundTripsAndFormatParseIdentity) {
  std::mt19937_64 rng(7);
  Alphabet alphabet;
  for (const char* t : {"a", "b", "c", "d"}) alphabet.intern(t);
  const GapConstraint gap(1, 4);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::size_t m = 2 + iter % 4;
    const Pattern p = negseq::testing::random_pattern(rng, 4, m);
    const Pattern q = negseq::testing::random_pattern(rng, 4, m);

    const auto text = format_pattern(p, alphabet, gap);
    ASSERT_EQ(parse_pattern(text, alphabet, gap), p) << text;
    ASSERT_EQ(format_pattern(parse_pattern(text, alphabet, gap), alphabet, gap), text);

    ASSERT_EQ(join(p, q).has_value(), suffix(p) == prefix(q));
    // Force a joinable partner: q' = suffix(p) extended by q's last gap.
    Pattern partner = suffix(p);
    partner.positives.push_back(q.positives.back());
    partner.negatives.push_back(q.negatives.back());
    const auto t = join(p, partner);
    ASSERT_TRUE(t);
    EXPECT_EQ(prefix(*t), p);
    EXPECT_EQ(suffix(*t), partner);
  }
}

}  // namespace
