// Copyright 2026 The qapcg Authors
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

#include "qapcg/circuit.hpp"

#include <gtest/gtest.h>

#include "qapcg/prg.hpp"

namespace qapcg {
namespace {

TEST(CircuitTest, ParseAndEvaluate) {
  Circuit c = ParseCircuit(R"(
# x * y + 5
INPUT 0 0
INPUT 1 1   # second party
MUL 2 0 1
CONST 3 5
ADD 4 2 3
OUTPUT 4
OUTPUT 3
)", 7);
  EXPECT_EQ(c.gates.size(), 7u);
  EXPECT_EQ(c.mul_count(), 1u);
  auto out = PlaintextEval(c, {{0, 2}, {1, 3}});
  EXPECT_EQ(out, (std::vector<Fq>{4, 5}));  // 6 + 5 = 11 = 4 mod 7
}

TEST(CircuitTest, ConstAndProduct) {
  EXPECT_EQ(PlaintextEval(ParseCircuit("CONST 0 5\nOUTPUT 0\n", 7), {}),
            std::vector<Fq>{5});
  EXPECT_EQ(PlaintextEval(ParseCircuit("INPUT 0 0\nINPUT 1 0\nMUL 2 0 1\nOUTPUT 2\n", 7),
                          {{0, 2}, {1, 3}}),
            std::vector<Fq>{6});
  // Constants are reduced mod q.
  EXPECT_EQ(PlaintextEval(ParseCircuit("CONST 0 -1\nOUTPUT 0\n", 5), {}), std::vector<Fq>{4});
}

TEST(CircuitTest, Malformed) {
  auto expect_bad = [](const std::string& text) {
    try {
      ParseCircuit(text, 5);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedCircuit) << text;
    }
  };
  expect_bad("ADD 2 0 1\n");                  // undefined inputs
  expect_bad("INPUT 0 0\nINPUT 0 1\n");       // reassignment
  expect_bad("OUTPUT 3\n");                   // undefined output
  expect_bad("XOR 1 2 3\n");                  // unknown gate
  expect_bad("INPUT 0\n");                    // missing operand
  expect_bad("INPUT 0 0 7\n");                // extra operand
  Circuit c = ParseCircuit("INPUT 0 0\nOUTPUT 0\n", 5);
  EXPECT_THROW(PlaintextEval(c, {}), Error);  // missing input value
}

TEST(CircuitTest, FormatRoundTrip) {
  CtrDrbg rng(1);
  Circuit c = RandomCircuit(7, 3, 6, 10, 5, rng);
  Circuit back = ParseCircuit(FormatCircuit(c), 7);
  EXPECT_EQ(FormatCircuit(back), FormatCircuit(c));
  EXPECT_EQ(back.mul_count(), 10u);
  EXPECT_EQ(back.CountOp(GateOp::kAdd), 5u);
}

}  // namespace
}  // namespace qapcg
