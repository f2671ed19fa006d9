// Copyright 2026 The GEM Embedding Authors.
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


#include "support/reference_gem.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gemref {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd Canonical(VectorXd u) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < u.size(); ++i) {
    if (std::abs(u(i)) > std::abs(u(best))) best = i;
  }
  if (u.size() > 0 && u(best) < 0) u = -u;
  return u;
}

namespace {

VectorXd Coarse(const MatrixXd& s, int t) {
  Eigen::JacobiSVD<MatrixXd> svd(s, Eigen::ComputeThinU);
  VectorXd g = VectorXd::Zero(s.rows());
  for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j) {
    g += std::pow(svd.singularValues()(j), t) * Canonical(svd.matrixU().col(j));
  }
  return g;
}

// Component of v orthogonal to the column space of c.
VectorXd Residual(const MatrixXd& c, const VectorXd& v) {
  if (c.cols() == 0) return v;
  Eigen::JacobiSVD<MatrixXd> svd(c, Eigen::ComputeThinU);
  const VectorXd& s = svd.singularValues();
  VectorXd res = v;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) <= 1e-8 * s(0)) break;
    const VectorXd u = svd.matrixU().col(j);
    res -= u.dot(v) * u;
  }
  return res;
}

}  // namespace

Output Encode(const std::vector<std::vector<std::string>>& sentences,
              const std::map<std::string, VectorXd>& vectors, int dim,
              const Params& p) {
  std::vector<MatrixXd> mats;
  for (const auto& words : sentences) {
    MatrixXd s(dim, static_cast<Eigen::Index>(words.size()));
    for (std::size_t j = 0; j < words.size(); ++j) s.col(j) = vectors.at(words[j]);
    mats.push_back(s);
  }

  Output out;
  out.directions = MatrixXd(dim, 0);
  out.sigma = VectorXd(0);
  if (p.removal != Removal::kNone) {
    MatrixXd xc(dim, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t i = 0; i < mats.size(); ++i) xc.col(i) = Coarse(mats[i], p.t);
    Eigen::JacobiSVD<MatrixXd> svd(xc, Eigen::ComputeThinU);
    const VectorXd& sv = svd.singularValues();
    int keep = 0;
    while (keep < p.k && keep < sv.size() && sv(keep) > 1e-6 * sv(0)) ++keep;
    out.directions.resize(dim, keep);
    out.sigma.resize(keep);
    for (int j = 0; j < keep; ++j) {
      out.directions.col(j) = Canonical(svd.matrixU().col(j));
      out.sigma(j) = sv(j);
    }
  }

  for (const MatrixXd& s : mats) {
    SentenceTrace trace;
    const int n = static_cast<int>(s.cols());
    const int k = static_cast<int>(out.sigma.size());

    if (p.removal == Removal::kSir) {
      for (int j = 0; j < std::min(p.h, k); ++j) trace.selected.push_back(j);
    } else if (p.removal == Removal::kSdr) {
      std::vector<double> o(k);
      for (int j = 0; j < k; ++j) {
        o[j] = (s.transpose() * out.directions.col(j)).norm();
        if (p.sigma_rerank) o[j] *= out.sigma(j);
      }
      std::vector<int> order(k);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return o[a] > o[b]; });
      order.resize(std::min(p.h, k));
      trace.selected = order;
    }

    VectorXd c = VectorXd::Zero(dim);
    for (int i = 0; i < n; ++i) {
      std::vector<int> ctx;
      for (int j = std::max(0, i - p.m); j <= std::min(n - 1, i + p.m); ++j) {
        if (j != i) ctx.push_back(j);
      }
      MatrixXd cm(dim, static_cast<Eigen::Index>(ctx.size()));
      for (std::size_t j = 0; j < ctx.size(); ++j) cm.col(j) = s.col(ctx[j]);
      const VectorXd v = s.col(i);

      VectorXd res = Residual(cm, v);
      double r_last = res.norm();
      VectorXd q = VectorXd::Zero(dim);
      if (r_last > 1e-8 * v.norm()) {
        q = res / r_last;
      } else {
        r_last = 0.0;
      }

      WordTrace w;
      w.novelty = v.norm() > 0.0 ? std::exp(r_last / v.norm()) : 1.0;
      w.significance = r_last / (2.0 * p.m + 1.0);
      double acc = 0.0;
      for (int j : trace.selected) {
        const double a = out.sigma(j) * q.dot(out.directions.col(j));
        acc += a * a;
      }
      w.uniqueness = std::exp(-std::sqrt(acc) / p.h);
      trace.words.push_back(w);
      c += (w.novelty + w.significance + w.uniqueness) * v;
    }

    VectorXd removed = c;
    for (int j : trace.selected) {
      const VectorXd d = out.directions.col(j);
      removed -= d.dot(c) * d;
    }
    trace.embedding = removed;
    out.sentences.push_back(trace);
  }
  return out;
}

}  // namespace gemref
