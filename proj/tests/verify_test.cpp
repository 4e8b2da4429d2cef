// Copyright 2026 The npg-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gtest/gtest.h"
#include "npg/verify.h"

namespace npg {
namespace {

TEST(VerifyTest, AllSuitesPass) {
  const VerifyReport report = RunVerify(50);
  ASSERT_EQ(report.suites.size(), AllVerifySuites().size());
  for (const SuiteResult& s : report.suites) {
    EXPECT_EQ(s.instances, 50) << s.name;
    EXPECT_GT(s.checks, 0) << s.name;
    EXPECT_EQ(s.failures, 0) << s.name << ": "
                             << (s.messages.empty() ? "" : s.messages[0]);
  }
  EXPECT_TRUE(report.ok());
}

TEST(VerifyTest, DifferentBaseSeedsAlsoPass) {
  EXPECT_TRUE(RunVerify(20, 1000000).ok());
}

TEST(VerifyTest, Deterministic) {
  const VerifyReport a = RunVerify(5), b = RunVerify(5);
  for (std::size_t k = 0; k < a.suites.size(); ++k) {
    EXPECT_EQ(a.suites[k].checks, b.suites[k].checks);
  }
}

TEST(VerifyTest, RejectsZeroSeeds) {
  EXPECT_THROW(RunVerify(0), ParameterError);
}

}  // namespace
}  // namespace npg
