#include <benchmark/benchmark.h>

#include <memory>

#include "catwb/completion/reflected.hpp"
#include "catwb/eqlz/equalizer.hpp"
#include "catwb/fincat/examples.hpp"
#include "catwb/msa/derivation.hpp"
#include "catwb/msa/enumerate.hpp"
#include "catwb/msa/parse.hpp"

using namespace catwb;
using fincat::ObjId;

namespace {

// y(1) + y(1) on opposite(delta), with n2 = n1 x n1 and n0 terminal.
struct DeltaSetup {
  std::shared_ptr<const fincat::FinCategory> op;
  fincat::ConeCollection cones;
  fincat::FinFunctor functor;

  DeltaSetup()
      : op(std::make_shared<const fincat::FinCategory>(fincat::opposite(fincat::delta()))),
        cones({fincat::ProductCone::binary("sum", ObjId{2}, *op->findMorphism("inl"),
                                           *op->findMorphism("inr"), *op)}),
        functor([this] {
          auto y1 = fincat::yoneda(op, ObjId{1});
          return fincat::coproductPresheaf(y1, y1).sum;
        }()) {
    cones.add(fincat::ProductCone::terminal("init", ObjId{0}));
  }
};

const DeltaSetup &setup() {
  static DeltaSetup s;
  return s;
}

std::vector<msa::Term> universe(const msa::Signature &sig, std::size_t size) {
  return msa::TermLayers(sig, size).all();
}

void BM_Normalize(benchmark::State &state) {
  const auto &s = setup();
  auto size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    completion::ReflectedPresheaf r(s.op, s.cones, s.functor);
    auto terms = universe(*r.theory().sig, size);
    state.ResumeTiming();
    for (auto t : terms)
      benchmark::DoNotOptimize(r.normalize(t));
    state.counters["terms"] = static_cast<double>(terms.size());
  }
}
BENCHMARK(BM_Normalize)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OracleClosure(benchmark::State &state) {
  const auto &s = setup();
  completion::ReflectedPresheaf r(s.op, s.cones, s.functor);
  const auto &th = r.theory();
  auto terms = universe(*th.sig, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto cc = msa::BoundedCongruence::overUniverse(*th.sig, th.equations, terms, 10'000'000);
    benchmark::DoNotOptimize(cc.classCount());
  }
  state.counters["terms"] = static_cast<double>(terms.size());
}
BENCHMARK(BM_OracleClosure)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Derives(benchmark::State &state) {
  const auto &s = setup();
  completion::ReflectedPresheaf r(s.op, s.cones, s.functor);
  const auto &th = r.theory();
  auto lhs = msa::parseTerm(*th.sig, "inl(pair(n1.l_id1, n1.r_id1))");
  auto rhs = msa::parseTerm(*th.sig, "n1.l_id1");
  auto goal = msa::makeEquation(lhs, rhs);
  msa::Budget budget{static_cast<std::size_t>(state.range(0)), 1'000'000};
  for (auto _ : state)
    benchmark::DoNotOptimize(msa::derives(*th.sig, th.equations, goal, budget));
}
BENCHMARK(BM_Derives)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EqualDistinct(benchmark::State &state) {
  const auto &s = setup();
  completion::ReflectedPresheaf r(s.op, s.cones, s.functor);
  auto a = msa::parseTerm(*r.theory().sig, "n1.l_id1");
  auto b = msa::parseTerm(*r.theory().sig, "n1.r_id1");
  benchmark::DoNotOptimize(r.equal(a, b)); // builds the separator candidates
  for (auto _ : state)
    benchmark::DoNotOptimize(r.equal(a, b));
}
BENCHMARK(BM_EqualDistinct)->Unit(benchmark::kMicrosecond);

void BM_EqualSaturation(benchmark::State &state) {
  const auto &s = setup();
  completion::EngineConfig cfg;
  cfg.mode = completion::EngineMode::Saturation;
  completion::ReflectedPresheaf r(s.op, s.cones, s.functor, cfg);
  auto a = msa::parseTerm(*r.theory().sig, "inr(t21(inl(pair(n1.l_id1, n1.r_id1))))");
  auto b = msa::parseTerm(*r.theory().sig, "n1.l_id1");
  for (auto _ : state)
    benchmark::DoNotOptimize(r.equal(a, b));
}
BENCHMARK(BM_EqualSaturation)->Unit(benchmark::kMillisecond);

void BM_EqualizerFixpoint(benchmark::State &state) {
  auto cat = std::make_shared<fincat::FinCategory>("eq");
  auto E = cat->addObject("E"), A = cat->addObject("A"), B = cat->addObject("B");
  auto idE = cat->addMorphism("idE", E, E), idA = cat->addMorphism("idA", A, A),
       idB = cat->addMorphism("idB", B, B);
  auto e = cat->addMorphism("e", E, A), f = cat->addMorphism("f", A, B),
       g = cat->addMorphism("g", A, B), h = cat->addMorphism("h", E, B);
  cat->setIdentity(E, idE);
  cat->setIdentity(A, idA);
  cat->setIdentity(B, idB);
  for (fincat::MorId m = 0; m < cat->morphismCount(); ++m) {
    cat->setComposite(cat->identity(cat->cod(m)), m, m);
    cat->setComposite(m, cat->identity(cat->dom(m)), m);
  }
  cat->setComposite(f, e, h);
  cat->setComposite(g, e, h);
  std::shared_ptr<const fincat::FinCategory> c = cat;
  fincat::FinFunctor P(c, "P");
  P.setCarrier(E, {"e1", "e3"});
  P.setCarrier(A, {"a1", "a2", "a3"});
  P.setCarrier(B, {"b1", "b2"});
  P.setAction(idE, {0, 1});
  P.setAction(idA, {0, 1, 2});
  P.setAction(idB, {0, 1});
  P.setAction(e, {0, 2});
  P.setAction(f, {0, 0, 1});
  P.setAction(g, {0, 1, 1});
  P.setAction(h, {0, 1});
  eqlz::EqualizerCone cone{"E", e, f, g};
  eqlz::FixpointBounds bounds;
  bounds.maxTermSize = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(eqlz::buildEqualizerTheory(c, {}, {cone}, P, bounds).fixpoint());
}
BENCHMARK(BM_EqualizerFixpoint)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
