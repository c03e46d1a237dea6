#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "credit/errors.hpp"
#include "credit/random.hpp"
#include "credit/table.hpp"

namespace {

TEST(Table, EmptyTableIsHeaderOnly) {
  credit::ResultTable table;
  table.columns = {"a", "b"};
  std::ostringstream out;
  credit::emit_csv(table, out);
  EXPECT_EQ(out.str(), "a,b\n");
}

TEST(Table, RowsAndBlankCells) {
  credit::ResultTable table;
  table.columns = {"i", "x", "blank"};
  table.add_row({std::int64_t{3}, 0.1, std::monostate{}});
  std::ostringstream out;
  credit::emit_csv(table, out);
  EXPECT_EQ(out.str(), "i,x,blank\n3,0.10000000000000001,\n");
  EXPECT_EQ(table.real(0, "i"), 3.0);
  EXPECT_THROW(table.real(0, "blank"), credit::InvalidArgument);
  EXPECT_THROW(table.add_row({1.0}), credit::InvalidArgument);
}

TEST(Table, RealsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.5222929936305732, 1e-300, -2.5e17}) {
    EXPECT_EQ(std::strtod(credit::format_real(v).c_str(), nullptr), v);
  }
}

TEST(Table, SidecarPath) {
  EXPECT_EQ(credit::meta_sidecar_path("out/run.csv").string(), "out/run.meta.json");
}

TEST(Random, DerivedSeedsDifferByCoordinate) {
  const auto base = credit::derive_seed(1, 2, 3, 4);
  EXPECT_EQ(base, credit::derive_seed(1, 2, 3, 4));
  EXPECT_NE(base, credit::derive_seed(2, 2, 3, 4));
  EXPECT_NE(base, credit::derive_seed(1, 3, 3, 4));
  EXPECT_NE(base, credit::derive_seed(1, 2, 4, 4));
  EXPECT_NE(base, credit::derive_seed(1, 2, 3, 5));
}

TEST(Random, UniformInUnitInterval) {
  auto engine = credit::make_engine(5);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = credit::uniform01(engine);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

}  // namespace
