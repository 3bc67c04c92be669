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

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "qapcg/qapcg.hpp"

namespace {

using namespace qapcg;
using json = nlohmann::ordered_json;

std::vector<std::uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Up to 64 hex digits, zero-padded on the right.
std::array<std::uint8_t, 32> ParseHex32(const std::string& hex, const char* what) {
  if (hex.size() > 64 || hex.size() % 2) {
    throw std::runtime_error(std::string(what) + ": expected an even number of hex digits (max 64)");
  }
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out[i / 2] = static_cast<std::uint8_t>(std::stoul(hex.substr(i, 2), nullptr, 16));
  }
  return out;
}

struct ParamOpts {
  std::uint32_t q = 3;
  unsigned n = 8, c = 2;
  std::size_t t = 8;
  std::string context;
  std::string noise = "regular";
  std::string domain = "block";

  void Add(CLI::App* app, bool with_noise = true) {
    app->add_option("--q", q, "field size (odd prime)")->capture_default_str();
    app->add_option("--n", n, "G = (Z/(q-1))^n")->capture_default_str();
    app->add_option("--c", c, "compression factor")->capture_default_str();
    app->add_option("--t", t, "noise weight per block")->capture_default_str();
    app->add_option("--context", context, "public context seed (hex)");
    app->add_option("--domain", domain, "SPFSS domain: block|full")
        ->check(CLI::IsMember({"block", "full"}))
        ->capture_default_str();
    if (with_noise) {
      app->add_option("--noise", noise, "regular|exact|monomial")
          ->check(CLI::IsMember({"regular", "exact", "monomial"}))
          ->capture_default_str();
    }
  }

  PcgParams Build() const {
    PcgParams p;
    p.q = q;
    p.n = n;
    p.c = c;
    p.t = t;
    p.context = ParseHex32(context, "--context");
    p.flavor = ParseNoiseFlavor(noise);
    p.mode = domain == "full" ? DomainMode::kFull : DomainMode::kBlock;
    ValidateParams(p);
    return p;
  }
};

struct RngOpt {
  std::string hex = "00";
  void Add(CLI::App* app) {
    app->add_option("--rng-seed", hex, "DRBG seed (hex) for replay")->capture_default_str();
  }
  CtrDrbg Make() const { return CtrDrbg(ParseHex32(hex, "--rng-seed")); }
};

json ParamsJson(const PcgParams& p) {
  return {{"q", p.q},
          {"n", p.n},
          {"c", p.c},
          {"t", p.t},
          {"group_order", p.group_size()},
          {"noise", NoiseFlavorName(p.flavor)},
          {"mode", DomainModeName(p.mode)}};
}

// ---------------------------------------------------------------------------

int CmdGen(const ParamOpts& po, const RngOpt& ro, int reject_fold, const std::string& out0,
           const std::string& out1) {
  PcgParams p = po.Build();
  CtrDrbg rng = ro.Make();
  std::optional<Quotient> quo;
  if (reject_fold > 0) {
    GroupSpec g = p.group();
    if (static_cast<unsigned>(reject_fold) > g.rank()) {
      throw std::runtime_error("--reject-fold exceeds the rank of G");
    }
    quo = QuotientBy(g, LeadingFactorSubgroup(g, static_cast<std::size_t>(reject_fold)));
  }
  auto [s0, s1] = PcgGen(p, std::nullopt, std::nullopt, rng, quo ? &*quo : nullptr);
  auto b0 = SerializeSeed(s0), b1 = SerializeSeed(s1);
  WriteFile(out0, b0);
  WriteFile(out1, b1);
  std::printf("wrote %s (%zu bytes) and %s (%zu bytes)\n", out0.c_str(), b0.size(), out1.c_str(),
              b1.size());
  std::printf("seed bound: %.0f bits per party\n",
              SeedSizeBits(p.c, static_cast<double>(p.t), static_cast<double>(p.group_size()), p.q));
  return 0;
}

int CmdExpand(const std::string& seed_path, const std::string& out, const std::string& dump) {
  PcgSeed seed = DeserializeSeed(ReadFile(seed_path));
  ExpandStats st;
  auto start = std::chrono::steady_clock::now();
  OleOutput o = PcgExpand(seed, seed.params, &st);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  WriteFile(out, SerializeOutput(seed.party, seed.params, o));
  if (!dump.empty()) {
    std::vector<std::uint8_t> bytes;
    SerializeElement(o.x, &bytes);
    SerializeElement(o.z, &bytes);
    WriteFile(dump, bytes);
  }
  std::printf("party %u: |G| = %zu, %llu PRG calls, %llu ring mults, %.3f s\n",
              static_cast<unsigned>(seed.party), seed.params.group_size(),
              static_cast<unsigned long long>(st.prg.calls),
              static_cast<unsigned long long>(st.ring_mults), secs);
  return 0;
}

int CmdVerify(const std::string& in0, const std::string& in1) {
  OutputFile a = DeserializeOutput(ReadFile(in0));
  OutputFile b = DeserializeOutput(ReadFile(in1));
  if (a.params_hash != b.params_hash) {
    std::printf("FAIL: outputs come from different parameters\n");
    return 1;
  }
  if (a.party == b.party) {
    std::printf("FAIL: both files belong to party %u\n", static_cast<unsigned>(a.party));
    return 1;
  }
  const OleOutput& o0 = a.party == 0 ? a.ole : b.ole;
  const OleOutput& o1 = a.party == 0 ? b.ole : a.ole;
  bool ring = VerifyOle(o0, o1);
  std::size_t bad = 0;
  const PrimeField& f = o0.x.field();
  auto ole = CrtSplit(o0, o1);
  for (const auto& s : ole) bad += f.Add(s.z0, s.z1) != f.Mul(s.x0, s.x1);
  std::printf("%s: z0 + z1 %s x0 * x1; %zu of %zu scalar OLEs hold\n", ring && !bad ? "OK" : "FAIL",
              ring ? "==" : "!=", ole.size() - bad, ole.size());
  return ring && !bad ? 0 : 1;
}

int CmdTriples(const ParamOpts& po, const RngOpt& ro, std::size_t parties, const std::string& out) {
  PcgParams p = po.Build();
  CtrDrbg rng = ro.Make();
  std::vector<TripleShares> triples;
  if (parties == 2) {
    auto two = TwoPartyTriples(p, rng);
    triples = {two[0], two[1]};
  } else {
    triples = NPartyTriples(p, parties, rng);
  }
  bool ok = CheckTriples(triples, PrimeField(p.q));
  std::printf("%zu parties, %zu triples, %s\n", parties, triples[0].size(),
              ok ? "all valid" : "INVALID");
  if (!out.empty()) {
    json j;
    j["params"] = ParamsJson(p);
    j["parties"] = json::array();
    for (const auto& t : triples) j["parties"].push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}});
    std::ofstream(out) << j.dump() << "\n";
  }
  return ok ? 0 : 1;
}

WireValues ParseInputs(const std::string& text, const Circuit& c, CtrDrbg& rng) {
  WireValues in;
  PrimeField f(c.q);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--inputs expects w=v pairs");
    in[static_cast<std::uint32_t>(std::stoul(item.substr(0, eq)))] =
        f.FromInt(std::stoll(item.substr(eq + 1)));
  }
  for (const auto& g : c.gates) {
    if (g.op == GateOp::kInput && !in.count(g.w)) in[g.w] = rng.UniformField(f);
  }
  return in;
}

int CmdGmw(const ParamOpts& po, const RngOpt& ro, const std::string& circuit_path,
           const std::string& mode, std::size_t parties, const std::string& inputs_text) {
  PcgParams p = po.Build();
  CtrDrbg rng = ro.Make();
  std::ifstream in(circuit_path);
  if (!in) throw std::runtime_error("cannot open " + circuit_path);
  Circuit circuit = ParseCircuit(in, p.q);
  WireValues inputs = ParseInputs(inputs_text, circuit, rng);
  auto plain = PlaintextEval(circuit, inputs);
  GmwResult res;
  if (mode == "triples") {
    auto triples = DealTriples(p, parties, circuit.mul_count(), rng);
    res = GmwEvalTriples(circuit, inputs, triples, rng);
  } else {
    MaskAssignment masks = DealCircuitDep(p, parties, circuit, rng);
    res = GmwEvalCircuitDep(circuit, inputs, masks);
  }
  std::printf("mode %s, %zu parties, %zu Mul gates\n", mode.c_str(), parties,
              circuit.mul_count());
  std::printf("outputs:");
  for (Fq v : res.outputs) std::printf(" %u", v);
  std::printf("\nplaintext:");
  for (Fq v : plain) std::printf(" %u", v);
  std::printf("\nonline elements: mul %llu, input %llu, output %llu\n",
              static_cast<unsigned long long>(res.stats.mul_elements),
              static_cast<unsigned long long>(res.stats.input_elements),
              static_cast<unsigned long long>(res.stats.output_elements));
  bool ok = res.outputs == plain;
  std::printf("%s\n", ok ? "OK: matches plaintext" : "FAIL: differs from plaintext");
  return ok ? 0 : 1;
}

int CmdEstimate(std::uint32_t q, unsigned n, unsigned c, double t, unsigned lambda, bool as_json) {
  AttackCostReport rep = SecurityEstimate(q, n, c, t, lambda);
  const FoldingCandidate& best = rep.candidates.at(rep.best_index);
  if (as_json) {
    json j;
    j["version"] = 1;
    j["inputs"] = {{"q", q}, {"n", n}, {"c", c}, {"t", t}, {"lambda", lambda},
                   {"group_order", rep.group_order}};
    j["candidates"] = json::array();
    for (const auto& fc : rep.candidates) {
      json row = {{"quotient_order", fc.quotient_order}, {"n", fc.n}, {"k", fc.k},
                  {"t", fc.t}, {"prange", fc.prange}, {"stat", fc.stat},
                  {"best", fc.best}, {"attack", fc.best_attack}};
      row["isd"] = fc.isd_applicable ? json(fc.isd) : json(nullptr);
      j["candidates"].push_back(row);
    }
    j["excluded"] = rep.excluded;
    j["chosen"] = {{"quotient_order", best.quotient_order}, {"attack", best.best_attack}};
    j["security_bits"] = rep.min_cost;
    j["secure"] = rep.secure;
    j["seed_bits"] = rep.seed_bits;
    j["prg_calls"] = rep.prg_calls;
    j["prg_calls_coarse"] = rep.prg_calls_coarse;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("version: 1\nq: %u\nn: %u\nc: %u\nt: %g\nlambda: %u\ngroup_order: %llu\n", q, n, c,
                t, lambda, static_cast<unsigned long long>(rep.group_order));
    std::printf("# |G/H| n' k' t' prange isd stat best\n");
    for (const auto& fc : rep.candidates) {
      std::printf("candidate: %llu %g %g %.3f %.2f %s %.2f %.2f %s\n",
                  static_cast<unsigned long long>(fc.quotient_order), fc.n, fc.k, fc.t, fc.prange,
                  fc.isd_applicable ? std::to_string(fc.isd).c_str() : "n/a", fc.stat, fc.best,
                  fc.best_attack.c_str());
    }
    std::printf("excluded: %zu\n", rep.excluded.size());
    std::printf("chosen_quotient_order: %llu\nchosen_attack: %s\n",
                static_cast<unsigned long long>(best.quotient_order), best.best_attack.c_str());
    std::printf("security_bits: %.2f\nseed_bits: %.6g\nprg_calls: %.6g\nprg_calls_coarse: %.6g\n",
                rep.min_cost, rep.seed_bits, rep.prg_calls, rep.prg_calls_coarse);
    std::printf("result: %s\n", rep.secure ? "PASS" : "FAIL");
  }
  return rep.secure ? 0 : 2;
}

int CmdBench(const ParamOpts& po, const RngOpt& ro, int reps) {
  PcgParams p = po.Build();
  CtrDrbg rng = ro.Make();
  using Clock = std::chrono::steady_clock;
  double gen = 0, expand = 0;
  ExpandStats st;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    auto [s0, s1] = PcgGen(p, std::nullopt, std::nullopt, rng);
    auto t1 = Clock::now();
    OleOutput o = PcgExpand(s0, p, &st);
    auto t2 = Clock::now();
    (void)o;
    gen += std::chrono::duration<double>(t1 - t0).count();
    expand += std::chrono::duration<double>(t2 - t1).count();
  }
  std::printf("|G| = %zu, c = %u, t = %zu, %d reps\n", p.group_size(), p.c, p.t, reps);
  std::printf("gen: %.4f s/rep\nexpand (one party): %.4f s/rep\n", gen / reps, expand / reps);
  std::printf("PRG calls per expand: %llu (bound %.0f)\n",
              static_cast<unsigned long long>(st.prg.calls / static_cast<unsigned>(reps)),
              PrgCallCount(p.c, static_cast<double>(p.t), static_cast<double>(p.group_size()), p.q));
  std::printf("OLEs per second (expand): %.0f\n",
              static_cast<double>(p.group_size()) * reps / expand);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudorandom OLE generators over group algebras"};
  app.require_subcommand(1);

  ParamOpts gen_p;
  RngOpt gen_r;
  int reject_fold = 0;
  std::string out0 = "party0.seed", out1 = "party1.seed";
  auto* gen = app.add_subcommand("gen", "generate a pair of seeds");
  gen_p.Add(gen);
  gen_r.Add(gen);
  gen->add_option("--reject-fold", reject_fold,
                  "resample noise until its fold by the subgroup of the first J factors of G "
                  "reaches the expected weight");
  gen->add_option("--out0", out0)->capture_default_str();
  gen->add_option("--out1", out1)->capture_default_str();

  std::string seed_path, out_path, dump_path;
  auto* expand = app.add_subcommand("expand", "expand a seed into an OLE output");
  expand->add_option("--seed", seed_path)->required();
  expand->add_option("--out", out_path)->required();
  expand->add_option("--dump", dump_path, "also write x and z as raw elements");

  std::string in0, in1;
  auto* verify = app.add_subcommand("verify", "check two expanded outputs");
  verify->add_option("in0", in0)->required();
  verify->add_option("in1", in1)->required();

  ParamOpts tri_p;
  RngOpt tri_r;
  std::size_t tri_parties = 2;
  std::string tri_out;
  auto* triples = app.add_subcommand("triples", "produce Beaver triples from PCGs");
  tri_p.Add(triples, false);
  tri_r.Add(triples);
  triples->add_option("--parties", tri_parties)->check(CLI::Range(2, 64))->capture_default_str();
  triples->add_option("--out", tri_out, "write shares as JSON");

  ParamOpts gmw_p;
  RngOpt gmw_r;
  std::string circuit_path, gmw_mode = "triples", inputs_text;
  std::size_t gmw_parties = 3;
  auto* gmw = app.add_subcommand("gmw", "evaluate a circuit with the online protocol");
  gmw_p.Add(gmw, false);
  gmw_r.Add(gmw);
  gmw->add_option("--circuit", circuit_path)->required();
  gmw->add_option("--mode", gmw_mode)
      ->check(CLI::IsMember({"triples", "circuitdep"}))
      ->capture_default_str();
  gmw->add_option("--parties", gmw_parties)->check(CLI::Range(2, 64))->capture_default_str();
  gmw->add_option("--inputs", inputs_text, "w=v,... (missing inputs are random)");

  std::uint32_t est_q = 3;
  unsigned est_n = 25, est_c = 2, est_lambda = kLambda;
  double est_t = 152;
  bool est_json = false;
  auto* estimate = app.add_subcommand("estimate", "attack cost over all foldings");
  estimate->add_option("--q", est_q)->capture_default_str();
  estimate->add_option("--n", est_n)->capture_default_str();
  estimate->add_option("--c", est_c)->capture_default_str();
  estimate->add_option("--t", est_t)->capture_default_str();
  estimate->add_option("--lambda", est_lambda)->capture_default_str();
  estimate->add_flag("--json", est_json);

  ParamOpts bench_p;
  RngOpt bench_r;
  int reps = 3;
  auto* bench = app.add_subcommand("bench", "time Gen and Expand");
  bench_p.Add(bench);
  bench_r.Add(bench);
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return CmdGen(gen_p, gen_r, reject_fold, out0, out1);
    if (*expand) return CmdExpand(seed_path, out_path, dump_path);
    if (*verify) return CmdVerify(in0, in1);
    if (*triples) return CmdTriples(tri_p, tri_r, tri_parties, tri_out);
    if (*gmw) return CmdGmw(gmw_p, gmw_r, circuit_path, gmw_mode, gmw_parties, inputs_text);
    if (*estimate) return CmdEstimate(est_q, est_n, est_c, est_t, est_lambda, est_json);
    if (*bench) return CmdBench(bench_p, bench_r, reps);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
