#include "catwb/completion/gamma.hpp"

namespace catwb::completion {

GammaHat::GammaHat(const Theory &theory, FinFunctor g, NatTrans gamma, bool requireNatural)
    : theory_(&theory), g_(std::move(g)), gamma_(std::move(gamma)),
      alg_(theory.sig) {
  if (auto r = fincat::preservesCones(g_, theory.cones); !r)
    throw NotConePreserving(g_.name() + " does not preserve the cones: " + r.witness);
  if (theory.functor && requireNatural) {
    if (auto v = fincat::naturalityViolation(*theory.functor, g_, gamma_))
      throw std::invalid_argument("γ is not natural: " + *v);
  }
  alg_ = theories::functorToAlgebra(theory, g_, &gamma_);
}

int GammaHat::operator()(msa::Term t) const {
  std::lock_guard lock(mutex_);
  auto it = memo_.find(t);
  if (it != memo_.end())
    return it->second;
  auto v = alg_.evaluate(t, {});
  if (!v)
    throw std::invalid_argument("γ̂ is undefined on " + theory_->sig->show(t));
  memo_.emplace(t, *v);
  return *v;
}

std::string GammaHat::show(msa::Term t) const {
  return g_.elementName(t.sort().value, (*this)(t));
}

msa::Term mapL(const Theory &from, const Theory &to, const NatTrans &alpha, msa::Term t) {
  if (t.isVariable())
    throw std::invalid_argument("mapL expects a closed term");
  const auto &origin = from.origin(t.symbol());
  if (origin.kind == theories::SymbolOrigin::Kind::Constant)
    return to.constant(origin.object, alpha.at(origin.object, origin.element));
  std::vector<msa::Term> args;
  for (msa::Term a : t.args())
    args.push_back(mapL(from, to, alpha, a));
  return to.sig->apply(t.symbol(), args);
}

} // namespace catwb::completion
