// Copyright 2026 The Frenet Planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "frenet_planner/report_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <locale>
#include <string>
#include <vector>

namespace fp = frenet_planner;

TEST(ReportIo, NumbersUseNineSignificantDigits)
{
  EXPECT_EQ(fp::format_number(0.1), "0.1");
  EXPECT_EQ(fp::format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(fp::format_number(123456789012.0), "1.23456789e+11");
  EXPECT_EQ(fp::format_number(-2.5), "-2.5");
  EXPECT_EQ(fp::format_number(0.0), "0");
  EXPECT_EQ(fp::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(fp::format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(ReportIo, NumbersIgnoreLocale)
{
  struct Comma : std::numpunct<char>
  {
    char do_decimal_point() const override { return ','; }
  };
  const std::locale previous = std::locale::global(std::locale(std::locale::classic(), new Comma));
  const std::string text = fp::format_number(1.5);
  std::locale::global(previous);
  EXPECT_EQ(text, "1.5");
}

TEST(ReportIo, HistogramBins)
{
  const std::vector<double> v{0.0, 0.049, 0.05, 0.12, 0.12};
  const auto bins = fp::histogram(v, 0.05);
  ASSERT_EQ(bins.size(), 3u);
  EXPECT_EQ(bins[0].count, 2u);
  EXPECT_EQ(bins[1].count, 1u);
  EXPECT_EQ(bins[2].count, 2u);
  EXPECT_DOUBLE_EQ(bins[2].lower, 0.1);
  EXPECT_DOUBLE_EQ(bins[2].upper, 0.15000000000000002);
}

TEST(ReportIo, EntropyOfOccupancy)
{
  std::vector<fp::HistogramBin> bins(4);
  EXPECT_EQ(fp::histogram_entropy(bins), 0.0);
  bins[0].count = 5;
  EXPECT_EQ(fp::histogram_entropy(bins), 0.0);
  for (auto & b : bins) {
    b.count = 3;
  }
  EXPECT_NEAR(fp::histogram_entropy(bins), std::log(4.0), 1e-15);
  bins[3].count = 0;
  EXPECT_NEAR(fp::histogram_entropy(bins), std::log(3.0), 1e-15);
}
