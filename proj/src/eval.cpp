#include "zgf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "zgf/rng.hpp"

namespace zgf {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v), s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / double(v.size() - 1));
}

void check_same_length(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
}

/// Contingency table with compacted label ids.
struct Contingency {
  std::vector<std::vector<long>> n;
  std::vector<long> a, b;
  long total = 0;

  Contingency(const std::vector<int>& u, const std::vector<int>& v) {
    std::map<int, int> ru, rv;
    for (int x : u) ru.emplace(x, int(ru.size()));
    for (int x : v) rv.emplace(x, int(rv.size()));
    n.assign(ru.size(), std::vector<long>(rv.size(), 0));
    for (std::size_t i = 0; i < u.size(); ++i) n[ru[u[i]]][rv[v[i]]]++;
    a.assign(ru.size(), 0);
    b.assign(rv.size(), 0);
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = 0; j < n[i].size(); ++j) {
        a[i] += n[i][j];
        b[j] += n[i][j];
        total += n[i][j];
      }
  }
};

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

Eigen::MatrixXd minmax_scale(const Eigen::MatrixXd& X) {
  MinMaxScaler s;
  s.fit(X);
  return s.transform(X);
}

void MinMaxScaler::fit(const Eigen::MatrixXd& X) {
  if (X.rows() < 1) throw std::invalid_argument("minmax: empty matrix");
  lo = X.colwise().minCoeff();
  hi = X.colwise().maxCoeff();
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double range = hi[j] - lo[j];
    if (range <= 0.0) {
      out.col(j).setZero();
    } else {
      out.col(j) = (X.col(j).array() - lo[j]) / range;
    }
  }
  return out;
}

Eigen::MatrixXd pca_project(const Eigen::MatrixXd& X, int d) {
  const Eigen::Index N = X.rows(), D = X.cols();
  if (N < 2) throw std::invalid_argument("pca_project: need at least 2 rows");
  if (d < 1 || d > std::min<Eigen::Index>(N - 1, D))
    throw std::invalid_argument("pca_project: d out of range");
  Eigen::MatrixXd C = X.rowwise() - X.colwise().mean();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::MatrixXd V = svd.matrixV().leftCols(d);
  for (int j = 0; j < d; ++j) {
    Eigen::Index imax;
    V.col(j).cwiseAbs().maxCoeff(&imax);
    if (V(imax, j) < 0) V.col(j) = -V.col(j);
  }
  return C * V;
}

std::vector<int> ward_cluster(const Eigen::MatrixXd& X, int k) {
  const int N = int(X.rows());
  if (k < 1 || k > N) throw std::invalid_argument("ward_cluster: k out of range");

  // Cluster slots; merged-away slots become inactive.
  std::vector<bool> alive(std::size_t(N), true);
  std::vector<long> size(std::size_t(N), 1);
  std::vector<std::vector<double>> D(std::size_t(N), std::vector<double>(std::size_t(N), 0.0));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      D[i][j] = D[j][i] = (X.row(i) - X.row(j)).squaredNorm();

  std::vector<int> member(static_cast<std::size_t>(N), 0);
  for (int i = 0; i < N; ++i) member[i] = i;

  int clusters = N;
  while (clusters > k) {
    int bi = -1, bj = -1;
    double best = 0;
    for (int i = 0; i < N; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < N; ++j) {
        if (!alive[j]) continue;
        if (bi < 0 || D[i][j] < best) {
          best = D[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    // Merge bj into bi (bi < bj keeps the smallest index as the slot id).
    for (int m = 0; m < N; ++m) {
      if (!alive[m] || m == bi || m == bj) continue;
      double nij = double(size[bi] + size[bj] + size[m]);
      D[bi][m] = D[m][bi] = ((size[bi] + size[m]) * D[bi][m] + (size[bj] + size[m]) * D[bj][m] -
                             size[m] * best) /
                            nij;
    }
    size[bi] += size[bj];
    alive[bj] = false;
    for (int i = 0; i < N; ++i)
      if (member[i] == bj) member[i] = bi;
    --clusters;
  }

  std::vector<int> labels(std::size_t(N), -1);
  std::map<int, int> relabel;
  for (int i = 0; i < N; ++i) {
    auto [it, inserted] = relabel.emplace(member[i], int(relabel.size()));
    labels[i] = it->second;
  }
  return labels;
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
  check_same_length(a, b);
  if (a.empty()) throw std::invalid_argument("ari: empty labelings");
  Contingency c(a, b);
  double sum_ij = 0, sum_a = 0, sum_b = 0;
  for (const auto& row : c.n)
    for (long v : row) sum_ij += choose2(double(v));
  for (long v : c.a) sum_a += choose2(double(v));
  for (long v : c.b) sum_b += choose2(double(v));
  double total = choose2(double(c.total));
  // Single division of integer-valued quantities keeps textbook cases exact.
  double num = total * sum_ij - sum_a * sum_b;
  double den = total * 0.5 * (sum_a + sum_b) - sum_a * sum_b;
  if (den == 0.0) return 1.0;  // both partitions trivial
  return num / den;
}

double ami(const std::vector<int>& a, const std::vector<int>& b) {
  check_same_length(a, b);
  if (a.empty()) throw std::invalid_argument("ami: empty labelings");
  Contingency c(a, b);
  const double N = double(c.total);

  double mi = 0;
  for (std::size_t i = 0; i < c.n.size(); ++i)
    for (std::size_t j = 0; j < c.n[i].size(); ++j)
      if (c.n[i][j] > 0) {
        double p = c.n[i][j] / N;
        mi += p * std::log(N * c.n[i][j] / (double(c.a[i]) * double(c.b[j])));
      }
  double hu = 0, hv = 0;
  for (long v : c.a)
    if (v > 0) hu -= v / N * std::log(v / N);
  for (long v : c.b)
    if (v > 0) hv -= v / N * std::log(v / N);
  if (hu == 0.0 && hv == 0.0) return 1.0;

  // Expected MI under the hypergeometric model.
  double emi = 0;
  for (long ai : c.a)
    for (long bj : c.b) {
      long lo = std::max<long>(1, ai + bj - c.total);
      long hi = std::min(ai, bj);
      for (long nij = lo; nij <= hi; ++nij) {
        double logp = std::lgamma(ai + 1) + std::lgamma(bj + 1) + std::lgamma(c.total - ai + 1) +
                      std::lgamma(c.total - bj + 1) - std::lgamma(c.total + 1) -
                      std::lgamma(nij + 1) - std::lgamma(ai - nij + 1) -
                      std::lgamma(bj - nij + 1) - std::lgamma(c.total - ai - bj + nij + 1);
        emi += (nij / N) * std::log(N * nij / (double(ai) * double(bj))) * std::exp(logp);
      }
    }

  double denom = 0.5 * (hu + hv) - emi;
  if (std::fabs(denom) < 1e-12) return 0.0;
  return (mi - emi) / denom;
}

double matched_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  check_same_length(pred, truth);
  if (pred.empty()) throw std::invalid_argument("matched_accuracy: empty labelings");
  std::map<int, int> rp, rt;
  for (int x : pred) rp.emplace(x, int(rp.size()));
  for (int x : truth) rt.emplace(x, int(rt.size()));
  std::size_t P = rp.size(), C = rt.size();
  std::vector<std::vector<long>> M(P, std::vector<long>(C, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) M[rp[pred[i]]][rt[truth[i]]]++;

  // Optimal injective assignment over the smaller side, subset DP.
  bool transpose = C > P;
  std::size_t rows = transpose ? C : P, cols = transpose ? P : C;
  if (cols > 20) throw std::invalid_argument("matched_accuracy: too many classes");
  auto at = [&](std::size_t r, std::size_t c) { return transpose ? M[c][r] : M[r][c]; };
  std::vector<long> dp(std::size_t(1) << cols, -1);
  dp[0] = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<long> nx = dp;  // leaving this row unassigned is allowed
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] < 0) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (mask & (std::size_t(1) << c)) continue;
        std::size_t m2 = mask | (std::size_t(1) << c);
        nx[m2] = std::max(nx[m2], dp[mask] + at(r, c));
      }
    }
    dp = std::move(nx);
  }
  long best = 0;
  for (long v : dp) best = std::max(best, v);
  return double(best) / double(pred.size());
}

LogRegModel logreg_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, double l2) {
  const Eigen::Index N = X.rows(), D = X.cols();
  if (std::size_t(N) != y.size()) throw std::invalid_argument("logreg_fit: label count mismatch");
  int C = 0;
  for (int c : y) C = std::max(C, c + 1);
  std::set<int> present(y.begin(), y.end());
  if (present.size() < 2) throw std::invalid_argument("logreg_fit: single-class training set");

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(C, D);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(C);
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(N, C);
  for (Eigen::Index i = 0; i < N; ++i) Y(i, y[std::size_t(i)]) = 1.0;

  auto eval = [&](const Eigen::MatrixXd& Wc, const Eigen::VectorXd& bc, Eigen::MatrixXd* gW,
                  Eigen::VectorXd* gb) {
    Eigen::MatrixXd Z = X * Wc.transpose();
    Z.rowwise() += bc.transpose();
    Eigen::VectorXd zmax = Z.rowwise().maxCoeff();
    Eigen::MatrixXd E = (Z.colwise() - zmax).array().exp();
    Eigen::VectorXd S = E.rowwise().sum();
    double nll = 0;
    for (Eigen::Index i = 0; i < N; ++i)
      nll -= std::log(E(i, y[std::size_t(i)]) / S[i]);
    nll /= double(N);
    double obj = nll + 0.5 * l2 / double(N) * Wc.squaredNorm();
    if (gW) {
      Eigen::MatrixXd P = E.array().colwise() / S.array();
      Eigen::MatrixXd G = (P - Y) / double(N);
      *gW = G.transpose() * X + (l2 / double(N)) * Wc;
      *gb = G.colwise().sum();
    }
    return obj;
  };

  double step = 1.0;
  for (int it = 0; it < 1000; ++it) {
    Eigen::MatrixXd gW;
    Eigen::VectorXd gb;
    double obj = eval(W, b, &gW, &gb);
    double gnorm = std::sqrt(gW.squaredNorm() + gb.squaredNorm());
    if (gnorm <= 1e-6) break;
    // Backtracking line search on the convex objective.
    step *= 2.0;
    while (step > 1e-12) {
      Eigen::MatrixXd Wn = W - step * gW;
      Eigen::VectorXd bn = b - step * gb;
      if (eval(Wn, bn, nullptr, nullptr) <= obj - 0.5 * step * gnorm * gnorm) {
        W = std::move(Wn);
        b = std::move(bn);
        break;
      }
      step *= 0.5;
    }
  }
  return {std::move(W), std::move(b)};
}

std::vector<int> logreg_predict(const LogRegModel& m, const Eigen::MatrixXd& X) {
  std::vector<int> out(std::size_t(X.rows()));
  Eigen::MatrixXd Z = X * m.W.transpose();
  Z.rowwise() += m.b.transpose();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < Z.cols(); ++c)
      if (Z(i, c) > Z(i, best)) best = int(c);  // ties keep the lowest class id
    out[std::size_t(i)] = best;
  }
  return out;
}

ClusterReport protocol_A(const std::vector<Descriptor>& descriptors, const std::string& mouse,
                         const std::string& video_type, int runs, int per_class,
                         std::uint64_t seed) {
  std::map<std::string, std::vector<const Descriptor*>> by_video;
  for (const auto& d : descriptors)
    if (d.mouse_id == mouse && d.video_type == video_type) by_video[d.video_id].push_back(&d);
  if (by_video.size() < 2)
    throw std::invalid_argument("protocol_A: need at least 2 videos for mouse '" + mouse +
                                "' type '" + video_type + "'");
  std::string offenders;
  for (const auto& [video, reps] : by_video)
    if (reps.size() < 2) offenders += (offenders.empty() ? "" : ", ") + video;
  if (!offenders.empty())
    throw std::invalid_argument("protocol_A: insufficient repeats for videos: " + offenders);

  const int k = int(by_video.size());
  ClusterReport report;
  report.runs = runs;
  std::vector<double> aris, amis, accs;
  for (int run = 0; run < runs; ++run) {
    Rng rng(mix_seed(seed, std::uint64_t(run)));
    std::vector<const Descriptor*> chosen;
    std::vector<int> truth;
    int cls = 0;
    for (const auto& [video, reps] : by_video) {
      std::vector<std::size_t> idx(reps.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      rng.shuffle(idx);
      std::size_t take = std::min<std::size_t>(std::size_t(per_class), reps.size());
      for (std::size_t i = 0; i < take; ++i) {
        chosen.push_back(reps[idx[i]]);
        truth.push_back(cls);
      }
      ++cls;
    }
    Eigen::MatrixXd X(chosen.size(), chosen[0]->vector.size());
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = 0; j < chosen[i]->vector.size(); ++j) X(i, j) = chosen[i]->vector[j];
    Eigen::MatrixXd S = minmax_scale(X);
    int d = int(std::min<Eigen::Index>(10, std::min(S.rows() - 1, S.cols())));
    Eigen::MatrixXd P = pca_project(S, d);
    auto labels = ward_cluster(P, k);
    ClusterRun r{ari(labels, truth), ami(labels, truth), matched_accuracy(labels, truth)};
    report.per_run.push_back(r);
    aris.push_back(r.ari);
    amis.push_back(r.ami);
    accs.push_back(r.accuracy);
  }
  report.ari_mean = mean_of(aris);
  report.ari_std = std_of(aris);
  report.ami_mean = mean_of(amis);
  report.ami_std = std_of(amis);
  report.acc_mean = mean_of(accs);
  report.acc_std = std_of(accs);
  return report;
}

ClassifyReport protocol_BC(const std::vector<Descriptor>& descriptors, ClassifyTarget target,
                           int splits, double test_frac, std::uint64_t seed, double l2) {
  if (descriptors.empty()) throw std::invalid_argument("protocol_BC: no descriptors");
  auto label_of = [&](const Descriptor& d) {
    return target == ClassifyTarget::video_type ? d.video_type : d.mouse_id;
  };
  std::map<std::string, int> classes;
  for (const auto& d : descriptors) classes.emplace(label_of(d), 0);
  int cid = 0;
  for (auto& [name, id] : classes) id = cid++;
  const int C = int(classes.size());
  if (C < 2) throw std::invalid_argument("protocol_BC: need at least 2 classes");

  std::vector<int> y;
  for (const auto& d : descriptors) y.push_back(classes[label_of(d)]);
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(C));
  for (std::size_t i = 0; i < y.size(); ++i) by_class[std::size_t(y[i])].push_back(i);
  for (const auto& [name, id] : classes)
    if (by_class[std::size_t(id)].size() < 2)
      throw std::invalid_argument("protocol_BC: class '" + name + "' has fewer than 2 samples");

  Eigen::MatrixXd X(descriptors.size(), descriptors[0].vector.size());
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    if (descriptors[i].vector.size() != std::size_t(X.cols()))
      throw std::invalid_argument("protocol_BC: descriptor length mismatch");
    for (std::size_t j = 0; j < descriptors[i].vector.size(); ++j) X(i, j) = descriptors[i].vector[j];
  }

  ClassifyReport report;
  for (const auto& [name, id] : classes) report.class_names.push_back(name);
  report.confusion.assign(std::size_t(C), std::vector<int>(std::size_t(C), 0));

  for (int s = 0; s < splits; ++s) {
    Rng rng(mix_seed(seed, std::uint64_t(s)));
    std::vector<std::size_t> train, test;
    for (int c = 0; c < C; ++c) {
      auto idx = by_class[std::size_t(c)];
      rng.shuffle(idx);
      std::size_t ntest = std::size_t(std::lround(test_frac * double(idx.size())));
      ntest = std::min(std::max<std::size_t>(ntest, 1), idx.size() - 1);
      for (std::size_t i = 0; i < idx.size(); ++i)
        (i < ntest ? test : train).push_back(idx[i]);
    }
    auto take = [&](const std::vector<std::size_t>& rows) {
      Eigen::MatrixXd M(rows.size(), X.cols());
      for (std::size_t i = 0; i < rows.size(); ++i) M.row(i) = X.row(Eigen::Index(rows[i]));
      return M;
    };
    Eigen::MatrixXd Xtr = take(train), Xte = take(test);
    std::vector<int> ytr, yte;
    for (auto i : train) ytr.push_back(y[i]);
    for (auto i : test) yte.push_back(y[i]);

    MinMaxScaler scaler;
    scaler.fit(Xtr);
    auto model = logreg_fit(scaler.transform(Xtr), ytr, l2);
    auto pred = logreg_predict(model, scaler.transform(Xte));

    int correct = 0;
    for (std::size_t i = 0; i < yte.size(); ++i) {
      report.confusion[std::size_t(yte[i])][std::size_t(pred[i])]++;
      if (pred[i] == yte[i]) ++correct;
    }
    report.per_split_accuracy.push_back(double(correct) / double(yte.size()));

    if (s == 0) {
      report.f1.assign(std::size_t(C), 0.0);
      report.support.assign(std::size_t(C), 0);
      for (int c = 0; c < C; ++c) {
        long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < yte.size(); ++i) {
          if (yte[i] == c && pred[i] == c) ++tp;
          if (yte[i] != c && pred[i] == c) ++fp;
          if (yte[i] == c && pred[i] != c) ++fn;
          if (yte[i] == c) {}
        }
        report.support[std::size_t(c)] = int(std::count(yte.begin(), yte.end(), c));
        double denom = 2.0 * tp + fp + fn;
        report.f1[std::size_t(c)] = denom > 0 ? 2.0 * tp / denom : 0.0;
      }
    }
  }
  report.cv_accuracy_mean = mean_of(report.per_split_accuracy);
  report.cv_accuracy_std = std_of(report.per_split_accuracy);
  return report;
}

std::string cluster_report_json(const ClusterReport& r) {
  nlohmann::ordered_json j;
  j["runs"] = r.runs;
  j["ari"] = {{"mean", r.ari_mean}, {"std", r.ari_std}};
  j["ami"] = {{"mean", r.ami_mean}, {"std", r.ami_std}};
  j["accuracy"] = {{"mean", r.acc_mean}, {"std", r.acc_std}};
  auto& runs = j["per_run"] = nlohmann::ordered_json::array();
  for (const auto& run : r.per_run)
    runs.push_back({{"ari", run.ari}, {"ami", run.ami}, {"accuracy", run.accuracy}});
  return j.dump(2);
}

std::string classify_report_json(const ClassifyReport& r) {
  nlohmann::ordered_json j;
  j["cv_accuracy"] = {{"mean", r.cv_accuracy_mean}, {"std", r.cv_accuracy_std}};
  j["per_split_accuracy"] = r.per_split_accuracy;
  j["classes"] = r.class_names;
  j["f1_first_split"] = r.f1;
  j["support_first_split"] = r.support;
  j["confusion"] = r.confusion;
  return j.dump(2);
}

}  // namespace zgf
