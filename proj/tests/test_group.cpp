#include "fixtures.hpp"

using namespace ahardy;
using namespace ahardy::testing;

namespace {

TEST(Group, TrivialPresentation) {
  const Truncation t = enumerate(trivial_group(), 5);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.elements[0].word.empty());
  EXPECT_TRUE(t.inverse_closed);
}

TEST(Group, CyclicWordCount) {
  const Truncation t = enumerate(cyclic_group(), 3);
  EXPECT_EQ(t.size(), 7u);
  EXPECT_EQ(t.size(), free_word_count(1, 3));
  EXPECT_TRUE(t.inverse_closed);
  // g^n is the real shift by tanh(n atanh(1/2))
  for (const auto& e : t.elements) {
    int n = 0;
    for (int x : e.word) n += x;
    EXPECT_LE(map_distance(e.map, MoebiusMap::real_shift(std::tanh(n * std::atanh(0.5)))), 1e-12) << word_string(cyclic_group(), e.word);
  }
}

TEST(Group, RankTwoWordCount) {
  const Truncation t = enumerate(rank_two_group(), 2);
  EXPECT_EQ(t.size(), 17u);
  EXPECT_EQ(free_word_count(2, 2), 17u);
  EXPECT_TRUE(t.warnings.empty());
  for (std::size_t i = 0; i < t.size(); ++i) {
    ASSERT_GE(t.inverse_index[i], 0);
    EXPECT_LE(map_distance(t.elements[static_cast<std::size_t>(t.inverse_index[i])].map, t.elements[i].map.inverse()), 1e-12);
  }
}

TEST(Group, IdentityFirstAndLengthOrdered) {
  const Truncation t = enumerate(rank_two_group(), 3);
  EXPECT_TRUE(t.elements[0].word.empty());
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LE(t.elements[i - 1].word.size(), t.elements[i].word.size());
}

TEST(Group, PositiveWordsOnly) {
  const Truncation t = enumerate(cyclic_group(), 4, false);
  EXPECT_EQ(t.size(), 5u);
  EXPECT_FALSE(t.inverse_closed);
}

TEST(Group, CollisionWarning) {
  GroupPresentation p = cyclic_group();
  p.generators.push_back({"h", MoebiusMap::real_shift(0.5)});
  const Truncation t = enumerate(p, 1);
  EXPECT_EQ(t.size(), 3u);
  ASSERT_FALSE(t.warnings.empty());
  EXPECT_NE(t.warnings[0].find("CollisionWarning"), std::string::npos);
}

TEST(Group, WordHelpers) {
  const GroupPresentation p = rank_two_group();
  const Word w{1, -2, 2, 1};
  EXPECT_EQ(reduce(w), (Word{1, 1}));
  EXPECT_EQ(inverse_word(Word{1, -2}), (Word{2, -1}));
  EXPECT_EQ(word_string(p, Word{1, -2}), "g1.g2^-1");
  EXPECT_EQ(word_string(p, Word{}), "e");
  EXPECT_LE(map_distance(word_map(p, Word{1, -1}), MoebiusMap::identity()), 1e-12);
  EXPECT_THROW(word_map(p, Word{3}), Error);
}

TEST(Group, ValidateRejectsBadGenerators) {
  GroupPresentation p;
  p.generators.push_back({"r", MoebiusMap::rotation(0.7)});
  try {
    p.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EllipticGenerator);
  }
  p.generators[0].map = MoebiusMap::identity();
  try {
    p.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityGenerator);
  }
  EXPECT_NO_THROW(rank_two_group().validate());
}

TEST(Group, CharacterEvaluation) {
  const Truncation t = enumerate(cyclic_group(), 2);
  for (const auto& e : t.elements) EXPECT_EQ(character_eval(Character::identity(1), e), cplx(1.0));
  const Character chi{{I}};
  expect_near(chi(Word{1, 1}), -1.0, 1e-15);
  const Character rot{{unit(0.9)}};
  expect_near(rot(Word{-1}), unit(-0.9), 1e-15);
  EXPECT_THROW(chi(Word{2}), Error);
  EXPECT_THROW(Character{{cplx(2.0)}}.validate(), Error);
}

TEST(Group, CharacterIsHomomorphism) {
  const Character chi{{unit(0.4), unit(-1.3)}};
  const Word u{1, -2, 1}, v{2, 2, -1};
  Word uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  expect_near(chi(uv), chi(u) * chi(v), 1e-14);
  expect_near(chi(reduce(uv)), chi(uv), 1e-14);
}

TEST(Group, CharacterLattice) {
  const CharacterLattice l1 = character_lattice(1, 16);
  EXPECT_EQ(l1.size(), 16u);
  expect_near(l1.characters[8].values[0], -1.0, 1e-15);
  EXPECT_EQ(l1.shifted(3, {8}), 11u);
  EXPECT_EQ(l1.shifted(12, {8}), 4u);
  const CharacterLattice l0 = character_lattice(0, 16);
  EXPECT_EQ(l0.size(), 1u);
  const CharacterLattice l3 = character_lattice(3, 32);
  EXPECT_EQ(l3.K, 16);
  EXPECT_EQ(l3.size(), 4096u);
  const CharacterLattice l2 = character_lattice(2, 4);
  for (std::size_t i = 0; i < l2.size(); ++i) {
    const std::size_t j = l2.shifted(i, {1, 3});
    expect_near(l2.characters[j].values[0], l2.characters[i].values[0] * unit(2.0 * pi / 4), 1e-14);
    expect_near(l2.characters[j].values[1], l2.characters[i].values[1] * unit(2.0 * pi * 3 / 4), 1e-14);
  }
}

}  // namespace
