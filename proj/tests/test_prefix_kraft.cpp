#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "antichain/prefix_kraft.hpp"
#include "support/antichains.hpp"

using namespace antichain;
using namespace antichain::kraft;

namespace {
std::vector<CodeWord> words_of(const std::vector<SubsetMask>& fam) {
  std::vector<CodeWord> w;
  for (const auto& a : fam)
    if (!a.empty()) w.push_back(set_to_word(a));
  return w;
}
}  // namespace

TEST(Kraft, Words) {
  EXPECT_EQ(set_to_word(SubsetMask::from_elements(5, {1, 3})).bits(), "101");
  EXPECT_THROW(set_to_word(SubsetMask(3)), input_error);
  EXPECT_THROW(CodeWord("012"), input_error);
  std::vector<CodeWord> ok = {CodeWord("0"), CodeWord("10"), CodeWord("11")};
  EXPECT_TRUE(is_prefix_free(ok));
  EXPECT_EQ(kraft_sum(ok), ExactRational(1));
  std::vector<CodeWord> bad = {CodeWord("10"), CodeWord("101")};
  EXPECT_FALSE(is_prefix_free(bad));
  std::vector<CodeWord> dup = {CodeWord("1"), CodeWord("1")};
  EXPECT_FALSE(is_prefix_free(dup));
}

TEST(Kraft, PrefixFreeIsNotAntichain) {
  std::vector<SubsetMask> fam = {SubsetMask::from_elements(3, {1, 2, 3}), SubsetMask::from_elements(3, {1, 3})};
  EXPECT_TRUE(is_prefix_free(words_of(fam)));
  EXPECT_FALSE(is_antichain(fam));
  auto v = find_antichain_violation(fam);
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(fam[v->first] == fam[1]);
  EXPECT_THROW(antichain_partial_sum(fam, 3), not_antichain_error);
}

TEST(Kraft, PartialSums) {
  std::vector<SubsetMask> single = {SubsetMask::from_elements(1, {1})};
  EXPECT_EQ(antichain_partial_sum(single, 3), ExactRational(7, 8));
  EXPECT_EQ(slice_counts(single, 3), (std::vector<BigCount>{0, 1, 1, 1}));
  EXPECT_THROW(slice_counts(single, 0), input_error);
  // the telescoped form equals the Kraft sum of the words when every member lies in [N]
  std::vector<SubsetMask> fam = {SubsetMask::from_elements(4, {1, 2}), SubsetMask::from_elements(4, {1, 3}),
                                 SubsetMask::from_elements(4, {2, 3}), SubsetMask::from_elements(4, {4})};
  EXPECT_EQ(telescoped_kraft_form(fam, 4), kraft_sum(words_of(fam)));
}

TEST(Kraft, DensityTable) {
  std::vector<SubsetMask> fam = {SubsetMask::from_elements(2, {2}), SubsetMask::from_elements(3, {1, 3})};
  auto t = density_ratios(fam, 4);
  EXPECT_EQ(t.ratios.size(), 3u);
  EXPECT_EQ(t.weighted_sum, ExactRational(1, 4) + ExactRational(2, 8) + ExactRational(2, 16));
  EXPECT_TRUE(t.bound_holds);
}

TEST(Kraft, MaximalAntichainsOfFive) {
  // small cases by hand: {∅}, {[g]} and, for g = 3, the two full levels plus
  // the three {{i}, [3] - {i}}
  EXPECT_EQ(testsupport::maximal_antichains(1).size(), 2u);
  EXPECT_EQ(testsupport::maximal_antichains(2).size(), 3u);
  EXPECT_EQ(testsupport::maximal_antichains(3).size(), 7u);
  // 29 and 376 are the published counts of maximal antichains of 2^[4], 2^[5] (OEIS A326358)
  EXPECT_EQ(testsupport::maximal_antichains(4).size(), 29u);
  auto all = testsupport::maximal_antichains(5);
  EXPECT_EQ(all.size(), 376u);
  for (const auto& ac : all) {
    std::vector<SubsetMask> fam;
    for (auto m : ac) fam.push_back(testsupport::from_mask(5, m));
    ASSERT_TRUE(is_antichain(fam));
    EXPECT_LE(antichain_partial_sum(fam, 5), 2);
    auto w = words_of(fam);
    EXPECT_TRUE(is_prefix_free(w));
    EXPECT_LE(kraft_sum(w), 1);
    EXPECT_EQ(telescoped_kraft_form(fam, 5) <= 1, true);
  }
}

TEST(Kraft, RandomLevelAntichains) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t ground = 4 + rng() % 20;
    std::size_t level = 1 + rng() % ground;
    auto fam = testsupport::random_level_antichain(rng, ground, level, 1 + rng() % 40);
    ASSERT_TRUE(is_antichain(fam));
    EXPECT_LE(antichain_partial_sum(fam, static_cast<long>(ground)), 2);
    auto w = words_of(fam);
    EXPECT_TRUE(is_prefix_free(w));
    EXPECT_LE(kraft_sum(w), 1);
  }
}

TEST(Kraft, FamilyFileRoundTrip) {
  std::vector<SubsetMask> fam = {SubsetMask::from_elements(4, {1, 4}), SubsetMask::from_elements(3, {2, 3})};
  std::stringstream ss;
  write_family(ss, fam);
  std::stringstream in("# comment\n\n" + ss.str());
  auto back = read_family(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(back[0] == fam[0]);
  EXPECT_TRUE(back[1] == fam[1]);
  std::stringstream broken("1,x\n");
  EXPECT_THROW(read_family(broken), input_error);

  std::vector<CodeWord> words = {CodeWord("01"), CodeWord("1")};
  std::stringstream cs;
  write_codebook(cs, words);
  auto wb = read_codebook(cs);
  ASSERT_EQ(wb.size(), 2u);
  EXPECT_EQ(wb[1].bits(), "1");
}
