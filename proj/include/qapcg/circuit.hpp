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

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qapcg/errors.hpp"
#include "qapcg/field.hpp"

namespace qapcg {

enum class GateOp { kInput, kConst, kAdd, kMul, kOutput };

struct Gate {
  GateOp op;
  std::uint32_t w = 0;  // output wire; for kOutput the wire being revealed
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint32_t party = 0;  // kInput
  Fq value = 0;             // kConst
};

// Arithmetic circuit over F_q: single assignment, gates in topological
// order. Wires may be read any number of times.
struct Circuit {
  std::uint32_t q = 3;
  std::vector<Gate> gates;

  std::size_t CountOp(GateOp op) const {
    std::size_t n = 0;
    for (const auto& g : gates) n += g.op == op;
    return n;
  }
  std::size_t mul_count() const { return CountOp(GateOp::kMul); }

  std::uint32_t max_input_party() const {
    std::uint32_t m = 0;
    for (const auto& g : gates) {
      if (g.op == GateOp::kInput && g.party > m) m = g.party;
    }
    return m;
  }
};

inline void ValidateCircuit(const Circuit& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::kMalformedCircuit, m); };
  std::unordered_map<std::uint32_t, char> defined;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    std::string where = "gate " + std::to_string(i) + ": ";
    auto need = [&](std::uint32_t wire) {
      if (!defined.count(wire)) bad(where + "wire " + std::to_string(wire) + " used before definition");
    };
    switch (g.op) {
      case GateOp::kAdd:
      case GateOp::kMul:
        need(g.u);
        need(g.v);
        break;
      case GateOp::kOutput:
        need(g.w);
        continue;
      case GateOp::kConst:
        if (g.value >= c.q) bad(where + "constant not reduced mod q");
        break;
      case GateOp::kInput:
        break;
    }
    if (defined.count(g.w)) bad(where + "wire " + std::to_string(g.w) + " assigned twice");
    defined[g.w] = 1;
  }
}

// One gate per line: INPUT w p | CONST w v | ADD w u v | MUL w u v | OUTPUT w.
// '#' starts a comment.
inline Circuit ParseCircuit(std::istream& in, std::uint32_t q) {
  Circuit c;
  c.q = q;
  PrimeField f(q);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string op;
    if (!(ss >> op)) continue;
    auto bad = [&](const std::string& m) {
      throw Error(ErrorCode::kMalformedCircuit, "line " + std::to_string(lineno) + ": " + m);
    };
    Gate g{};
    long long a = 0, b = 0, d = 0;
    auto wire = [&](long long x) {
      if (x < 0 || x > 0xffffffffLL) bad("wire id out of range");
      return static_cast<std::uint32_t>(x);
    };
    if (op == "INPUT") {
      if (!(ss >> a >> b) || b < 0) bad("expected INPUT w p");
      g = {GateOp::kInput, wire(a), 0, 0, static_cast<std::uint32_t>(b), 0};
    } else if (op == "CONST") {
      if (!(ss >> a >> b)) bad("expected CONST w v");
      g = {GateOp::kConst, wire(a), 0, 0, 0, f.FromInt(b)};
    } else if (op == "ADD" || op == "MUL") {
      if (!(ss >> a >> b >> d)) bad("expected " + op + " w u v");
      g = {op == "ADD" ? GateOp::kAdd : GateOp::kMul, wire(a), wire(b), wire(d), 0, 0};
    } else if (op == "OUTPUT") {
      if (!(ss >> a)) bad("expected OUTPUT w");
      g = {GateOp::kOutput, wire(a), 0, 0, 0, 0};
    } else {
      bad("unknown gate '" + op + "'");
    }
    std::string extra;
    if (ss >> extra) bad("trailing tokens");
    c.gates.push_back(g);
  }
  ValidateCircuit(c);
  return c;
}

inline Circuit ParseCircuit(const std::string& text, std::uint32_t q) {
  std::istringstream in(text);
  return ParseCircuit(in, q);
}

inline std::string FormatCircuit(const Circuit& c) {
  std::ostringstream os;
  for (const auto& g : c.gates) {
    switch (g.op) {
      case GateOp::kInput: os << "INPUT " << g.w << ' ' << g.party << '\n'; break;
      case GateOp::kConst: os << "CONST " << g.w << ' ' << g.value << '\n'; break;
      case GateOp::kAdd: os << "ADD " << g.w << ' ' << g.u << ' ' << g.v << '\n'; break;
      case GateOp::kMul: os << "MUL " << g.w << ' ' << g.u << ' ' << g.v << '\n'; break;
      case GateOp::kOutput: os << "OUTPUT " << g.w << '\n'; break;
    }
  }
  return os.str();
}

// Input values keyed by input wire.
using WireValues = std::map<std::uint32_t, Fq>;

inline Fq InputValue(const WireValues& inputs, std::uint32_t w, std::uint32_t q) {
  auto it = inputs.find(w);
  if (it == inputs.end()) {
    throw Error(ErrorCode::kMalformedCircuit, "no value for input wire " + std::to_string(w));
  }
  return it->second % q;
}

// Reference evaluation in the clear. Returns the revealed values in OUTPUT
// order; `wires` receives every wire value if given.
inline std::vector<Fq> PlaintextEval(const Circuit& c, const WireValues& inputs,
                                     std::unordered_map<std::uint32_t, Fq>* wires = nullptr) {
  ValidateCircuit(c);
  PrimeField f(c.q);
  std::unordered_map<std::uint32_t, Fq> val;
  std::vector<Fq> out;
  for (const auto& g : c.gates) {
    switch (g.op) {
      case GateOp::kInput: val[g.w] = InputValue(inputs, g.w, c.q); break;
      case GateOp::kConst: val[g.w] = g.value; break;
      case GateOp::kAdd: val[g.w] = f.Add(val.at(g.u), val.at(g.v)); break;
      case GateOp::kMul: val[g.w] = f.Mul(val.at(g.u), val.at(g.v)); break;
      case GateOp::kOutput: out.push_back(val.at(g.w)); break;
    }
  }
  if (wires) *wires = std::move(val);
  return out;
}

// Random circuit with `muls` multiplication gates, a few additions and
// constants, inputs spread over `parties`, and a couple of outputs.
template <class Rng>
Circuit RandomCircuit(std::uint32_t q, std::size_t parties, std::size_t inputs,
                      std::size_t muls, std::size_t adds, Rng& rng) {
  Circuit c;
  c.q = q;
  std::uint32_t next = 0;
  std::vector<std::uint32_t> live;
  for (std::size_t i = 0; i < inputs; ++i) {
    c.gates.push_back({GateOp::kInput, next, 0, 0, static_cast<std::uint32_t>(i % parties), 0});
    live.push_back(next++);
  }
  c.gates.push_back({GateOp::kConst, next, 0, 0, 0, static_cast<Fq>(rng.Below(q))});
  live.push_back(next++);
  std::size_t m = 0, a = 0;
  while (m < muls || a < adds) {
    bool do_mul = a >= adds || (m < muls && rng.Below(muls + adds) < muls);
    std::uint32_t u = live[rng.Below(live.size())];
    std::uint32_t v = live[rng.Below(live.size())];
    c.gates.push_back({do_mul ? GateOp::kMul : GateOp::kAdd, next, u, v, 0, 0});
    live.push_back(next++);
    (do_mul ? m : a)++;
  }
  c.gates.push_back({GateOp::kOutput, next - 1, 0, 0, 0, 0});
  c.gates.push_back({GateOp::kOutput, live[rng.Below(live.size())], 0, 0, 0, 0});
  return c;
}

}  // namespace qapcg
