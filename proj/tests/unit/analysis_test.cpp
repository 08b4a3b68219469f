#include <cmath>
#include <algorithm>
#include <sstream>

#include "oracle.h"
#include "test_util.h"

using namespace fragmark;

namespace {
const int kR[] = {21, 41, 61, 81, 101};
const int kL[] = {20, 40, 60, 80, 100};
// Published theoretical percentages, rows r, columns l.
const double kTable[5][5] = {
    {99.75, 98.05, 95.04, 90.76, 85.25},  {100.0, 98.96, 96.18, 92.00, 86.48},
    {100.0, 99.72, 97.56, 93.65, 88.23},  {100.0, 100.0, 98.82, 95.47, 90.31},
    {100.0, 100.0, 99.70, 97.21, 92.54}};
}  // namespace

TEST(Theory, ReproducesPublishedTable) {
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const double pct = 100.0 * average_recovery_rate({256, kR[a], kL[b], kReferenceOrigin}).average;
      EXPECT_NEAR(pct, kTable[a][b], 0.1) << "r=" << kR[a] << " l=" << kL[b];
    }
  }
}

TEST(Theory, ExactCountingMatchesEnumeration) {
  for (int r : {3, 5, 7}) {
    for (int l : {1, 2, 3, 5}) {
      for (auto origin : {BlockIndex{0, 0}, BlockIndex{3, 5}, BlockIndex{10, 2}}) {
        const double exact = average_recovery_rate({16, r, l, origin}).average;
        EXPECT_NEAR(exact, oracle::brute_force_average_rate(16, r, l, origin.row, origin.col), 1e-12);
      }
    }
  }
}

TEST(Theory, FullContainmentGivesOne) {
  for (int r : {21, 41, 101}) {
    for (int l = 1; l <= (r - 1) / 2; l += 7) {
      EXPECT_EQ(average_recovery_rate({256, r, l, {100, 100}}).average, 1.0);
    }
  }
}

TEST(Theory, ClosedFormMatchesCountingExhaustively) {
  // Interior placement so every window is a full r x r square.
  const int n = 128;
  for (int r = 3; r <= 31; r += 2) {
    for (int l = 1; l <= 40; ++l) {
      const TheoryParams p{n, r, l, {40, 40}};
      for (int i = 1; i <= l; ++i) {
        for (int j = 1; j <= l; ++j) {
          const double exact = block_recovery_rate_exact(p, {40 + i - 1, 40 + j - 1});
          ASSERT_EQ(closed_form_block_rate(n, r, l, i, j), exact) << r << ' ' << l << ' ' << i << ' ' << j;
        }
      }
    }
  }
}

TEST(Theory, ClosedFormExtents) {
  // r = 5 (half width 2), l = 8: rows near the edge see fewer tampered rows.
  EXPECT_EQ(closed_form_ud(5, 8, 1, 1).u, 3);
  EXPECT_EQ(closed_form_ud(5, 8, 4, 4).u, 5);
  EXPECT_EQ(closed_form_ud(5, 8, 8, 8).d, 3);
  // l below the half width: the whole side is covered.
  EXPECT_EQ(closed_form_ud(21, 5, 3, 3).u, 5);
  EXPECT_FRAGMARK_ERROR(closed_form_ud(5, 8, 0, 1), ErrorKind::Domain);
  EXPECT_FRAGMARK_ERROR(closed_form_ud(5, 8, 9, 1), ErrorKind::Domain);
}

TEST(Theory, MonotoneInRAndL) {
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const double here = average_recovery_rate({256, kR[a], kL[b], kReferenceOrigin}).average;
      if (a + 1 < 5) EXPECT_LE(here, average_recovery_rate({256, kR[a + 1], kL[b], kReferenceOrigin}).average);
      if (b + 1 < 5) EXPECT_GE(here, average_recovery_rate({256, kR[a], kL[b + 1], kReferenceOrigin}).average);
    }
  }
}

TEST(Theory, RandomTamperBaseline) {
  EXPECT_NEAR(random_tamper_rate(256, 10000), 0.8474, 1e-4);
  EXPECT_DOUBLE_EQ(random_tamper_rate(256, 0), 1.0);
}

TEST(Theory, SuperiorityMarginPositiveInsideSquare) {
  const TheoryParams p{256, 41, 60, kReferenceOrigin};
  EXPECT_GT(superiority_margin(p, {3 + 30, 5 + 30}), 0.0);
}

TEST(Theory, DomainErrors) {
  EXPECT_FRAGMARK_ERROR(average_recovery_rate({256, 21, 0, {0, 0}}), ErrorKind::Domain);
  EXPECT_FRAGMARK_ERROR(block_recovery_rate_exact({256, 21, 10, {0, 0}}, {50, 50}), ErrorKind::Domain);
  EXPECT_FRAGMARK_ERROR(validate({256, 20, 10, {0, 0}}), ErrorKind::Parameter);
  EXPECT_FRAGMARK_ERROR(validate({256, 21, 10, {250, 0}}), ErrorKind::Parameter);
}

TEST(Theory, PositionSweepCornerBeatsCentre) {
  const auto sweep = position_sweep(256, 41, 60);
  ASSERT_EQ(sweep.size(), 3u);
  EXPECT_EQ(sweep[0].position, TamperPosition::Corner);
  EXPECT_EQ(sweep[1].origin, kReferenceOrigin);
  // Clipped windows at the border contain fewer untampered blocks, so the
  // corner can only lose relative to the centre by a small margin.
  for (const auto& p : sweep) {
    EXPECT_GT(p.average, 0.9);
    EXPECT_LE(p.average, 1.0);
  }
}

TEST(Theory, MappingRegionRate) {
  const BlockGrid grid(16, 16);
  const auto offset = build_offset_mapping(grid);
  EXPECT_EQ(mapping_region_rate(offset, {{0, 0}, 4}), 1.0);
  EXPECT_EQ(mapping_region_rate(offset, {{0, 0}, 16}), 0.0);
}

TEST(Theory, TableAndHeatmapFormats) {
  std::ostringstream table;
  const int rs[] = {21};
  const int ls[] = {100};
  write_theory_table(table, 256, rs, ls, kReferenceOrigin);
  EXPECT_EQ(table.str(), "r,l,H_avg_theory\n21,100,0.8524825806\n");

  std::stringstream heat;
  write_heatmap_csv(heat, average_recovery_rate({64, 5, 3, {10, 10}}));
  std::string line;
  int lines = 0;
  while (std::getline(heat, line)) {
    ++lines;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
  }
  EXPECT_EQ(lines, 3);
}
