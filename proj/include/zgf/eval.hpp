#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zgf/landscape.hpp"

namespace zgf {

struct FeatureMatrix {
  Eigen::MatrixXd X;        // N trials x D features
  std::vector<int> labels;  // 0..C-1, one per row
};

struct ClusterRun {
  double ari = 0.0;
  double ami = 0.0;
  double accuracy = 0.0;
};

struct ClusterReport {
  double ari_mean = 0, ari_std = 0;
  double ami_mean = 0, ami_std = 0;
  double acc_mean = 0, acc_std = 0;
  int runs = 0;
  std::vector<ClusterRun> per_run;
};

struct ClassifyReport {
  double cv_accuracy_mean = 0, cv_accuracy_std = 0;
  std::vector<double> per_split_accuracy;
  std::vector<std::string> class_names;
  std::vector<double> f1;        // per class, first split
  std::vector<int> support;      // per class, first split test set
  std::vector<std::vector<int>> confusion;  // rows truth, cols prediction, all splits
};

/// Per-feature affine map of the pooled rows into [0,1]; constant features to 0.
Eigen::MatrixXd minmax_scale(const Eigen::MatrixXd& X);

/// Fit on one set, apply to another (train-only scaling for classification).
struct MinMaxScaler {
  Eigen::VectorXd lo, hi;
  void fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
};

/// Projection onto the top-d principal directions of the centered data,
/// descending eigenvalue order; each component's largest-magnitude loading is
/// made positive.
Eigen::MatrixXd pca_project(const Eigen::MatrixXd& X, int d = 10);

/// Agglomerative clustering, Ward linkage via the Lance-Williams recurrence
/// on squared Euclidean distances; ties broken by the smallest cluster index
/// pair; cut at k clusters. Labels are numbered by first row occurrence.
std::vector<int> ward_cluster(const Eigen::MatrixXd& X, int k);

double ari(const std::vector<int>& a, const std::vector<int>& b);
double ami(const std::vector<int>& a, const std::vector<int>& b);

/// Best cluster-to-class matching accuracy (optimal assignment).
double matched_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

struct LogRegModel {
  Eigen::MatrixXd W;  // C x D
  Eigen::VectorXd b;  // C
};

LogRegModel logreg_fit(const Eigen::MatrixXd& X, const std::vector<int>& y, double l2 = 1.0);
std::vector<int> logreg_predict(const LogRegModel& m, const Eigen::MatrixXd& X);

/// Clustering protocol: balanced resampling of repeats of distinct videos,
/// minmax -> pooled PCA(10) -> Ward with k = number of videos, scored against
/// video identity; mean +- std over runs.
ClusterReport protocol_A(const std::vector<Descriptor>& descriptors, const std::string& mouse,
                         const std::string& video_type, int runs = 20, int per_class = 10,
                         std::uint64_t seed = 0);

enum class ClassifyTarget { video_type, mouse_id };

/// Classification protocols: stratified 80/20 splits, train-only scaling,
/// multinomial logistic regression; accuracy over splits, per-class F1 from
/// the first split, confusion aggregated over all split test sets.
ClassifyReport protocol_BC(const std::vector<Descriptor>& descriptors, ClassifyTarget target,
                           int splits = 5, double test_frac = 0.2, std::uint64_t seed = 0,
                           double l2 = 1.0);

std::string cluster_report_json(const ClusterReport& r);
std::string classify_report_json(const ClassifyReport& r);

}  // namespace zgf
