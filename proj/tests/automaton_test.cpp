#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "ws1s/automaton.hpp"
#include "ws1s/compiler.hpp"
#include "ws1s/error.hpp"

namespace ws1s {
namespace {

Dfa compiled(const std::string& text, TrackRegistry& registry) {
  return compile(parse(text), registry);
}

Dfa compiled(const std::string& text) {
  TrackRegistry registry;
  return compiled(text, registry);
}

Word restrict(const Word& w, const std::vector<std::size_t>& positions) {
  Word out;
  for (const Symbol& s : w) {
    Symbol t;
    for (std::size_t p : positions) t.push_back(s[p]);
    out.push_back(t);
  }
  return out;
}

Nfa as_nfa(const Dfa& a) {
  Nfa n;
  n.tracks = a.tracks();
  n.initial = a.initial();
  n.accepting = a.accepting();
  for (StateId s = 0; s < a.num_states(); ++s) n.delta.push_back(a.transitions(s));
  return n;
}

bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), symbol_less);
}

// Random automata over at most three tracks: x, X, Y.
std::vector<Dfa> small_corpus(std::uint64_t seed, int count, TrackRegistry& registry) {
  registry.register_free({"x", VarKind::kFirstOrder});
  registry.register_free({"X", VarKind::kSecondOrder});
  registry.register_free({"Y", VarKind::kSecondOrder});
  testing::FormulaShape shape;
  shape.first_order = {"x"};
  testing::FormulaGenerator gen(seed, shape);
  std::vector<Dfa> out;
  while (static_cast<int>(out.size()) < count) out.push_back(compile(gen.next(), registry));
  return out;
}

constexpr std::size_t kMaxLen = 4;

// Worked examples.

TEST(Accepts, MembershipAutomaton) {
  const Dfa a = compiled("x in Y");
  EXPECT_TRUE(accepts(a, {{1, 1}}));
  EXPECT_FALSE(accepts(a, {}));
  EXPECT_FALSE(accepts(a, {{1, 0}}));
  EXPECT_THROW(accepts(a, {{1}}), Error);
}

TEST(Intersect, WithComplementIsEmpty) {
  const Dfa a = compiled("x < y");
  EXPECT_TRUE(is_empty_language(intersect(a, complement(a))));
}

TEST(Intersect, Idempotent) {
  const Dfa a = compiled("x in Y");
  EXPECT_TRUE(language_equiv(intersect(a, a), a));
}

TEST(Intersect, DisjointTracksWitnessLengthOne) {
  TrackRegistry r;
  const Dfa a = compiled("x1 in Y1", r);
  const Dfa b = compiled("x2 in Y2", r);
  const auto w = shortest_witness(intersect(a, b));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 1U);
}

TEST(Complement, Involution) {
  const Dfa a = compiled("X sub Y");
  EXPECT_TRUE(language_equiv(complement(complement(a)), a));
}

TEST(Complement, OfUniversalIsEmpty) {
  const TrackSet t({Track{0, VarKind::kSecondOrder}});
  EXPECT_TRUE(is_empty_language(complement(universal_dfa(t))));
}

TEST(Complement, PointwiseOnRandomWords) {
  const Dfa a = compiled("x < y & y in Z");
  const Dfa c = complement(a);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Word w(rng() % 7);
    for (Symbol& s : w) s = {static_cast<uint8_t>(rng() & 1), static_cast<uint8_t>(rng() & 1),
                             static_cast<uint8_t>(rng() & 1)};
    EXPECT_NE(accepts(a, w), accepts(c, w));
  }
}

TEST(Project, MembershipGivesExactlyOnce) {
  TrackRegistry r;
  const Dfa a = compiled("x in Y", r);
  const Dfa projected = minimize(determinize(project(a, 1)));
  TrackRegistry r2;
  const Dfa direct = compiled("ex2 Y: x in Y", r2);
  EXPECT_TRUE(language_equiv(projected, direct));
}

TEST(Project, DontCareTrackRemoval) {
  const Dfa a = compiled("x < y");
  const TrackSet extra({Track{5, VarKind::kSecondOrder}});
  const Dfa wide = cylindrify(a, extra);
  EXPECT_EQ(wide.num_states(), a.num_states());
  EXPECT_TRUE(language_equiv(minimize(determinize(project(wide, 5))), a));
}

TEST(Project, EmptyStaysEmpty) {
  const TrackSet t({Track{0, VarKind::kFirstOrder}, Track{1, VarKind::kSecondOrder}});
  EXPECT_TRUE(is_empty_language(determinize(project(empty_dfa(t), 1))));
}

TEST(Project, UnknownTrack) { EXPECT_THROW(project(compiled("x in Y"), 7), Error); }

TEST(Determinize, DeterministicInput) {
  const Dfa a = compiled("x = y + 1");
  EXPECT_TRUE(language_equiv(determinize(as_nfa(a)), a));
}

TEST(Determinize, ProjectedMembership) {
  const Dfa d = determinize(project(compiled("x in Y"), 1));
  EXPECT_TRUE(accepts(d, {{1}}));
  EXPECT_FALSE(accepts(d, {}));
}

TEST(Determinize, BudgetIsReported) {
  // Projecting y out of x < y & y in Z needs more than one subset.
  const Nfa n = project(compiled("x < y & y in Z"), 1);
  EXPECT_THROW(determinize(n, 1), BudgetExceeded);
}

TEST(Minimize, MembershipHasThreeStates) {
  EXPECT_EQ(minimize(compiled("x in Y")).num_states(), 3U);
}

TEST(Minimize, CanonicalUnderOperandOrder) {
  TrackRegistry r;
  const Dfa a = compiled("x < y", r);
  const Dfa b = compiled("y in Z", r);
  EXPECT_EQ(minimize(intersect(a, b)), minimize(intersect(b, a)));
}

TEST(Witness, Examples) {
  const TrackSet t({Track{0, VarKind::kSecondOrder}});
  EXPECT_FALSE(shortest_witness(empty_dfa(t)));
  // Accepts only the empty word.
  const Dfa eps = make_dfa(t, 0, {true}, {{}});
  ASSERT_TRUE(shortest_witness(eps));
  EXPECT_TRUE(shortest_witness(eps)->empty());
  EXPECT_EQ(shortest_witness(compiled("x in Y")), (Witness{{1, 1}}));
}

TEST(LanguageEquiv, Basics) {
  const Dfa a = compiled("x in Y");
  EXPECT_TRUE(language_equiv(a, a));
  EXPECT_FALSE(language_equiv(a, complement(a)));
}

TEST(Dfa, DeadStateIsLast) {
  const Dfa a = compiled("x in Y");
  ASSERT_TRUE(a.dead_state());
  EXPECT_EQ(*a.dead_state(), a.num_states() - 1);
  EXPECT_FALSE(universal_dfa(a.tracks()).dead_state());
}

TEST(Dfa, DumpFormat) {
  const std::string text = dump(compiled("x in Y"));
  EXPECT_EQ(text,
            "dfa tracks=0:fo,1:so states=3 initial=0\n"
            "accepting 1\n"
            "trans 0 0X 0\n"
            "trans 0 10 2\n"
            "trans 0 11 1\n"
            "trans 1 0X 1\n"
            "trans 1 1X 2\n"
            "trans 2 XX 2\n");
}

TEST(TrackSetTest, KindConflict) {
  EXPECT_THROW(TrackSet({Track{0, VarKind::kFirstOrder}, Track{0, VarKind::kSecondOrder}}),
               Error);
  const TrackSet a({Track{0, VarKind::kFirstOrder}});
  const TrackSet b({Track{0, VarKind::kSecondOrder}});
  EXPECT_THROW(a.unite(b), Error);
}

// Laws checked against direct word runs on every word up to length 4.

class AutomatonLaws : public ::testing::Test {
 protected:
  void SetUp() override { corpus_ = small_corpus(21, 40, registry_); }
  TrackRegistry registry_;
  std::vector<Dfa> corpus_;
};

TEST_F(AutomatonLaws, AuditHoldsAfterEveryOperation) {
  for (std::size_t i = 0; i + 1 < corpus_.size(); ++i) {
    const Dfa& a = corpus_[i];
    const Dfa& b = corpus_[i + 1];
    EXPECT_NO_THROW(a.audit());
    EXPECT_NO_THROW(intersect(a, b).audit());
    EXPECT_NO_THROW(complement(a).audit());
    EXPECT_NO_THROW(minimize(a).audit());
    EXPECT_NO_THROW(cylindrify(a, TrackSet({Track{9, VarKind::kFirstOrder}})).audit());
    if (!a.tracks().empty()) {
      EXPECT_NO_THROW(determinize(project(a, a.tracks()[0].index)).audit());
    }
  }
}

TEST_F(AutomatonLaws, IntersectIsPointwise) {
  for (std::size_t i = 0; i + 1 < corpus_.size(); ++i) {
    const Dfa& a = corpus_[i];
    const Dfa& b = corpus_[i + 1];
    const Dfa c = intersect(a, b);
    const auto pa = a.tracks().positions_in(c.tracks());
    const auto pb = b.tracks().positions_in(c.tracks());
    for (const Word& w : testing::all_words(c.tracks().size(), kMaxLen)) {
      ASSERT_EQ(accepts(c, w), accepts(a, restrict(w, pa)) && accepts(b, restrict(w, pb)));
    }
  }
}

TEST_F(AutomatonLaws, ComplementIsPointwise) {
  for (const Dfa& a : corpus_) {
    const Dfa c = complement(a);
    for (const Word& w : testing::all_words(a.tracks().size(), kMaxLen)) {
      ASSERT_NE(accepts(c, w), accepts(a, w));
    }
  }
}

TEST_F(AutomatonLaws, ProjectIsExistential) {
  for (const Dfa& a : corpus_) {
    const std::size_t width = a.tracks().size();
    if (width == 0) continue;
    for (std::size_t pos = 0; pos < width; ++pos) {
      const Nfa n = project(a, a.tracks()[pos].index);
      const Dfa d = determinize(n);
      for (const Word& w : testing::all_words(width - 1, kMaxLen)) {
        bool some = false;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << w.size()) && !some; ++bits) {
          Word full;
          for (std::size_t p = 0; p < w.size(); ++p) {
            Symbol s = w[p];
            s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), (bits >> p) & 1U);
            full.push_back(s);
          }
          some = accepts(a, full);
        }
        ASSERT_EQ(accepts(n, w), some);
        ASSERT_EQ(accepts(d, w), some);
      }
    }
  }
}

TEST_F(AutomatonLaws, PaddingClosureAcceptsZeroExtensions) {
  for (const Dfa& a : corpus_) {
    const std::size_t width = a.tracks().size();
    if (width == 0) continue;
    const Nfa plain = project(a, a.tracks()[0].index);
    const Nfa padded = project(a, a.tracks()[0].index, PaddingClosure::kTrailingZeros);
    for (const Word& w : testing::all_words(width - 1, 3)) {
      bool expected = accepts(plain, w);
      Word longer = w;
      for (int extra = 0; extra < 4 && !expected; ++extra) {
        longer.push_back(Symbol(width - 1, 0));
        expected = accepts(plain, longer);
      }
      ASSERT_EQ(accepts(padded, w), expected);
    }
  }
}

TEST_F(AutomatonLaws, MinimizeShrinksAndPreserves) {
  for (const Dfa& a : corpus_) {
    const Dfa m = minimize(a);
    EXPECT_LE(m.num_states(), a.num_states());
    EXPECT_EQ(minimize(m).num_states(), m.num_states());
    EXPECT_TRUE(language_equiv(m, a));
    for (const Word& w : testing::all_words(a.tracks().size(), kMaxLen)) {
      ASSERT_EQ(accepts(m, w), accepts(a, w));
    }
  }
}

TEST_F(AutomatonLaws, CylindrifyIgnoresNewTrack) {
  for (const Dfa& a : corpus_) {
    const Dfa c = cylindrify(a, TrackSet({Track{7, VarKind::kSecondOrder}}));
    EXPECT_EQ(c.num_states(), a.num_states());
    EXPECT_EQ(is_empty_language(c), is_empty_language(a));
    const auto pos = a.tracks().positions_in(c.tracks());
    for (const Word& w : testing::all_words(c.tracks().size(), 3)) {
      ASSERT_EQ(accepts(c, w), accepts(a, restrict(w, pos)));
    }
  }
}

TEST_F(AutomatonLaws, WitnessIsShortestThenLeast) {
  for (const Dfa& a : corpus_) {
    const auto w = shortest_witness(a);
    // Reachability of an accepting state by plain DFS.
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    bool reachable = false;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      reachable = reachable || a.is_accepting(s);
      for (const Transition& t : a.transitions(s)) {
        if (!seen[t.target]) {
          seen[t.target] = true;
          stack.push_back(t.target);
        }
      }
    }
    ASSERT_EQ(w.has_value(), reachable);
    if (!w) continue;
    EXPECT_TRUE(accepts(a, *w));
    EXPECT_LE(w->size(), a.num_states());
    if (w->size() > kMaxLen) continue;
    for (const Word& v : testing::all_words(a.tracks().size(), w->size())) {
      if (!accepts(a, v)) continue;
      ASSERT_GE(v.size(), w->size());
      if (v.size() == w->size()) ASSERT_FALSE(word_less(v, *w));
    }
  }
}

TEST_F(AutomatonLaws, DeterminizeMatchesNfaRuns) {
  for (const Dfa& a : corpus_) {
    if (a.tracks().empty()) continue;
    const Nfa n = project(a, a.tracks().size() > 1 ? a.tracks()[1].index : a.tracks()[0].index);
    const Dfa d = determinize(n);
    for (const Word& w : testing::all_words(n.tracks.size(), kMaxLen)) {
      ASSERT_EQ(accepts(d, w), accepts(n, w));
    }
  }
}

}  // namespace
}  // namespace ws1s
