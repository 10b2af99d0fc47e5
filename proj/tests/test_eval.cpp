#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "zgf/eval.hpp"
#include "zgf/rng.hpp"

using namespace zgf;

namespace {

Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd X(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) X(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return X;
}

std::vector<Descriptor> toy_descriptors(int classes, int repeats, double sep, Rng& rng) {
  std::vector<Descriptor> out;
  for (int c = 0; c < classes; ++c)
    for (int r = 0; r < repeats; ++r) {
      Descriptor d;
      d.mouse_id = "m0";
      d.video_type = "nat";
      d.video_id = "g" + std::to_string(c);
      for (int j = 0; j < 6; ++j) d.vector.push_back(sep * c + 0.05 * rng.normal());
      out.push_back(std::move(d));
    }
  return out;
}

}  // namespace

TEST_CASE("minmax_scale") {
  auto X = from_rows({{2, 7}, {4, 7}, {6, 7}});
  auto S = minmax_scale(X);
  CHECK(S(0, 0) == doctest::Approx(0.0));
  CHECK(S(1, 0) == doctest::Approx(0.5));
  CHECK(S(2, 0) == doctest::Approx(1.0));
  // Constant features map to zero.
  for (int i = 0; i < 3; ++i) CHECK(S(i, 1) == 0.0);
}

TEST_CASE("pca_project") {
  SUBCASE("rank-1 data, d=1 preserves distances along the line") {
    auto X = from_rows({{0, 0, 0}, {1, 2, 2}, {2, 4, 4}, {3, 6, 6}});
    auto P = pca_project(X, 1);
    double unit = std::sqrt(1.0 + 4.0 + 4.0);
    for (int i = 0; i + 1 < 4; ++i)
      CHECK(std::fabs(P(i + 1, 0) - P(i, 0)) == doctest::Approx(unit).epsilon(1e-9));
  }
  SUBCASE("full-d projection preserves pairwise distances") {
    Rng rng(3);
    Eigen::MatrixXd X(6, 4);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
    auto P = pca_project(X, 4);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        CHECK((P.row(i) - P.row(j)).norm() ==
              doctest::Approx((X.row(i) - X.row(j)).norm()).epsilon(1e-9));
  }
  SUBCASE("row order only permutes the projection") {
    auto X = from_rows({{0, 1}, {2, 3}, {5, 2}, {1, 7}});
    auto P = pca_project(X, 2);
    Eigen::MatrixXd Y(4, 2);
    Y.row(0) = X.row(2);
    Y.row(1) = X.row(0);
    Y.row(2) = X.row(3);
    Y.row(3) = X.row(1);
    auto Q = pca_project(Y, 2);
    CHECK((Q.row(0) - P.row(2)).norm() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK((Q.row(1) - P.row(0)).norm() == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("d out of range errors") {
    auto X = from_rows({{0, 1}, {2, 3}});
    CHECK_THROWS(pca_project(X, 2));  // d > N-1
    CHECK_THROWS(pca_project(X, 0));
  }
}

TEST_CASE("ward_cluster") {
  SUBCASE("recovers two well-separated blobs") {
    Rng rng(13);
    Eigen::MatrixXd X(10, 2);
    for (int i = 0; i < 5; ++i) {
      X(i, 0) = 0.0 + 0.01 * rng.normal();
      X(i, 1) = 0.0 + 0.01 * rng.normal();
      X(5 + i, 0) = 100.0 + 0.01 * rng.normal();
      X(5 + i, 1) = 100.0 + 0.01 * rng.normal();
    }
    auto labels = ward_cluster(X, 2);
    for (int i = 1; i < 5; ++i) CHECK(labels[std::size_t(i)] == labels[0]);
    for (int i = 6; i < 10; ++i) CHECK(labels[std::size_t(i)] == labels[5]);
    CHECK(labels[0] != labels[5]);
  }
  SUBCASE("k = N gives singletons, k = 1 one cluster") {
    auto X = from_rows({{0, 0}, {1, 0}, {2, 0}});
    auto singletons = ward_cluster(X, 3);
    CHECK(std::set<int>(singletons.begin(), singletons.end()).size() == 3);
    auto one = ward_cluster(X, 1);
    CHECK(one == std::vector<int>{0, 0, 0});
    CHECK_THROWS(ward_cluster(X, 4));
  }
  SUBCASE("deterministic") {
    Rng rng(19);
    Eigen::MatrixXd X(8, 3);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 3; ++j) X(i, j) = rng.normal();
    CHECK(ward_cluster(X, 3) == ward_cluster(X, 3));
  }
}

TEST_CASE("ari") {
  CHECK(ari({0, 1, 2}, {0, 1, 2}) == doctest::Approx(1.0));
  CHECK(ari({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(ari({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(-0.5));
  CHECK_THROWS(ari({0, 1}, {0, 1, 2}));
}

TEST_CASE("ami") {
  CHECK(ami({0, 1, 0, 1}, {0, 1, 0, 1}) == doctest::Approx(1.0));
  CHECK(ami({0, 1, 0, 1}, {1, 0, 1, 0}) == doctest::Approx(1.0));
  SUBCASE("label permutation invariance") {
    std::vector<int> a{0, 0, 1, 1, 2, 2}, b{0, 1, 1, 2, 2, 0};
    std::vector<int> b2{2, 0, 0, 1, 1, 2};  // same partition, renamed
    CHECK(ami(a, b) == doctest::Approx(ami(a, b2)));
  }
  SUBCASE("chance calibration") {
    Rng rng(31);
    double total = 0.0;
    const int trials = 200;
    for (int it = 0; it < trials; ++it) {
      std::vector<int> a, b;
      for (int i = 0; i < 30; ++i) {
        a.push_back(int(rng.below(3)));
        b.push_back(int(rng.below(3)));
      }
      total += ami(a, b);
    }
    CHECK(std::fabs(total / trials) <= 0.05);
  }
}

TEST_CASE("matched_accuracy") {
  CHECK(matched_accuracy({0, 1, 2}, {0, 1, 2}) == doctest::Approx(1.0));
  CHECK(matched_accuracy({0, 0, 1}, {0, 1, 1}) == doctest::Approx(2.0 / 3));
  CHECK(matched_accuracy({1, 0, 2}, {5, 9, 7}) == doctest::Approx(1.0));  // permuted names
  CHECK(matched_accuracy({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.5));
  CHECK_THROWS(matched_accuracy({0}, {0, 1}));
}

TEST_CASE("logistic regression") {
  SUBCASE("separable two-class toy reaches train accuracy 1") {
    Rng rng(7);
    Eigen::MatrixXd X(20, 2);
    std::vector<int> y(20, 0);
    for (int i = 0; i < 10; ++i) {
      X(i, 0) = -2 + 0.1 * rng.normal();
      X(i, 1) = 0.1 * rng.normal();
      X(10 + i, 0) = 2 + 0.1 * rng.normal();
      X(10 + i, 1) = 0.1 * rng.normal();
      y[std::size_t(10 + i)] = 1;
    }
    auto model = logreg_fit(X, y, 0.01);
    auto pred = logreg_predict(model, X);
    CHECK(pred == y);
  }
  SUBCASE("duplicate of a training point gets its class") {
    auto X = from_rows({{0, 0}, {5, 5}, {0, 1}, {5, 4}});
    std::vector<int> y{0, 1, 0, 1};
    auto model = logreg_fit(X, y, 0.1);
    auto pred = logreg_predict(model, from_rows({{5, 5}}));
    CHECK(pred == std::vector<int>{1});
  }
  SUBCASE("single-class training set errors") {
    auto X = from_rows({{0, 0}, {1, 1}});
    CHECK_THROWS(logreg_fit(X, {0, 0}, 1.0));
  }
  SUBCASE("zero-initialized symmetric scores tie to the lowest class") {
    LogRegModel m{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)};
    CHECK(logreg_predict(m, from_rows({{1, 2}})) == std::vector<int>{0});
  }
}

TEST_CASE("protocol_A") {
  Rng rng(77);
  auto descriptors = toy_descriptors(3, 10, 5.0, rng);

  SUBCASE("separated classes cluster perfectly and deterministically") {
    auto r1 = protocol_A(descriptors, "m0", "nat", 5, 10, 42);
    CHECK(r1.ari_mean == doctest::Approx(1.0));
    auto r2 = protocol_A(descriptors, "m0", "nat", 5, 10, 42);
    CHECK(r1.per_run.size() == r2.per_run.size());
    for (std::size_t i = 0; i < r1.per_run.size(); ++i)
      CHECK(r1.per_run[i].ari == r2.per_run[i].ari);
  }
  SUBCASE("insufficient repeats error lists the offending video") {
    auto few = descriptors;
    few.push_back(few[0]);
    few.back().video_id = "g9";  // a lone repeat
    bool threw = false;
    try {
      protocol_A(few, "m0", "nat", 2, 10, 0);
    } catch (const std::invalid_argument& e) {
      threw = true;
      CHECK(std::string(e.what()).find("g9") != std::string::npos);
    }
    CHECK(threw);
  }
  SUBCASE("fewer than two videos errors") {
    std::vector<Descriptor> one(descriptors.begin(), descriptors.begin() + 10);
    CHECK_THROWS(protocol_A(one, "m0", "nat", 2, 10, 0));
  }
}

TEST_CASE("protocol_BC") {
  Rng rng(99);
  auto descriptors = toy_descriptors(3, 10, 5.0, rng);
  for (std::size_t i = 0; i < descriptors.size(); ++i)
    descriptors[i].video_type = descriptors[i].video_id;  // classes = types

  SUBCASE("separable classes reach accuracy 1") {
    auto r = protocol_BC(descriptors, ClassifyTarget::video_type, 5, 0.2, 1, 1.0);
    CHECK(r.cv_accuracy_mean == doctest::Approx(1.0));
    CHECK(r.cv_accuracy_std == doctest::Approx(0.0));
  }
  SUBCASE("confusion row sums equal aggregated supports") {
    auto r = protocol_BC(descriptors, ClassifyTarget::video_type, 5, 0.2, 1, 1.0);
    REQUIRE(r.confusion.size() == 3);
    for (const auto& row : r.confusion) {
      int sum = 0;
      for (int v : row) sum += v;
      CHECK(sum == 5 * 2);  // 5 splits x 2 test samples per class
    }
  }
  SUBCASE("single-sample class errors") {
    auto bad = descriptors;
    bad.push_back(bad[0]);
    bad.back().video_type = "lonely";
    CHECK_THROWS(protocol_BC(bad, ClassifyTarget::video_type, 5, 0.2, 1, 1.0));
  }
  SUBCASE("randomized labels score near chance") {
    Rng label_rng(5);
    double total = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
      auto shuffled = descriptors;
      std::vector<std::string> types;
      for (const auto& d : shuffled) types.push_back(d.video_type);
      label_rng.shuffle(types);
      for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i].video_type = types[i];
      auto r = protocol_BC(shuffled, ClassifyTarget::video_type, 2, 0.2, std::uint64_t(s), 1.0);
      total += r.cv_accuracy_mean;
    }
    CHECK(std::fabs(total / seeds - 1.0 / 3) <= 0.15);
  }
}

TEST_CASE("report serialization is deterministic") {
  Rng rng(123);
  auto descriptors = toy_descriptors(2, 5, 4.0, rng);
  auto r = protocol_A(descriptors, "m0", "nat", 3, 5, 9);
  CHECK(cluster_report_json(r) == cluster_report_json(r));
  for (auto& d : descriptors) d.video_type = d.video_id;
  auto c = protocol_BC(descriptors, ClassifyTarget::video_type, 2, 0.2, 9, 1.0);
  CHECK(classify_report_json(c) == classify_report_json(c));
}
