#pragma once

#include "envalg/lie_algebra.hpp"
#include "envalg/pbw.hpp"
#include "oracle.hpp"

namespace support {

inline oracle::Kind kind_of(const envalg::AlgebraSpec& spec) {
  switch (spec.family()) {
    case envalg::Family::GL: return oracle::Kind::GL;
    case envalg::Family::SP: return oracle::Kind::SP;
    default: return oracle::Kind::SO;
  }
}

/// Oracle algebra matching a designator; the n of so is the matrix size.
inline oracle::Algebra oracle_for(const envalg::AlgebraSpec& spec) {
  return oracle::make(kind_of(spec), spec.family() == envalg::Family::SP || spec.family() == envalg::Family::GL
                                         ? spec.n()
                                         : spec.matrix_size());
}

inline oracle::Poly to_oracle(const envalg::QPoly& p) {
  oracle::Poly out;
  for (const auto& [w, c] : p.terms()) {
    oracle::Word v;
    for (auto letter : w) v.push_back(static_cast<int>(letter));
    out.emplace(std::move(v), c);
  }
  return out;
}

inline envalg::QPoly from_oracle(const envalg::EnvelopingPtr& alg, const oracle::Poly& p) {
  envalg::QPoly::TermTable t;
  for (const auto& [w, c] : p) {
    envalg::Word v;
    for (int x : w) v.push_back(static_cast<envalg::Letter>(x));
    t[v] += c;
  }
  return envalg::QPoly::from_raw_terms(alg, std::move(t));
}

}  // namespace support
