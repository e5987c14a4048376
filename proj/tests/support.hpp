#pragma once

#include <random>
#include <string>
#include <vector>

#include "hk/construct.hpp"
#include "hk/kclass.hpp"
#include "hk/random.hpp"

namespace hk::test {

inline Ring Z() { return Ring::integers(); }
inline Ring Q() { return Ring::rationals(); }

inline Matrix M(const std::vector<std::vector<long>>& rows, const Ring& r = Ring::integers()) {
  return Matrix::from_rows(r, rows);
}

inline std::vector<Scalar> S(std::initializer_list<long> xs) {
  std::vector<Scalar> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline bool valid(const HomotopyStructure& m) { return check_structure(m, true).empty(); }

inline std::string first_problem(const HomotopyStructure& m) {
  auto r = check_structure(m, true);
  return r.empty() ? std::string() : r.front();
}

// Adds a nonzero integer to one entry of one witness matrix. False when the
// certificate carries no witness entries.
inline bool corrupt_witness(Certificate& c, std::mt19937_64& gen) {
  std::vector<Matrix*> mats;
  auto collect = [&](Witness& w) {
    for (auto& m : w.mats)
      if (m.rows() > 0 && m.cols() > 0) mats.push_back(&m);
  };
  for (auto& st : c.steps) {
    if (auto* s = std::get_if<SesStep>(&st.body)) {
      collect(s->f);
      collect(s->g);
    } else if (auto* a = std::get_if<AcyclicStep>(&st.body)) {
      collect(a->h);
    } else if (auto* i = std::get_if<IsoStep>(&st.body)) {
      collect(i->phi);
    }
  }
  if (mats.empty()) return false;
  Matrix& m = *mats[static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(mats.size()) - 1))];
  auto r = static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(m.rows()) - 1));
  auto col = static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(m.cols()) - 1));
  long delta = uniform(gen, 1, 3) * (uniform(gen, 0, 1) ? 1 : -1);
  m.set(r, col, m(r, col) + delta);
  return true;
}

}  // namespace hk::test
