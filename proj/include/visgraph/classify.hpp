#ifndef VISGRAPH_CLASSIFY_HPP
#define VISGRAPH_CLASSIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "visgraph/error.hpp"
#include "visgraph/random.hpp"

namespace visgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Rows are samples; labels are class indices in [0, num_classes).
class LabeledDataset {
public:
    LabeledDataset() = default;

    LabeledDataset(Matrix samples, std::vector<int> labels, std::vector<std::string> class_names = {})
        : samples_(std::move(samples)), labels_(std::move(labels)), class_names_(std::move(class_names)) {
        if (samples_.rows() == 0) fail(ErrorKind::invalid_input, "dataset has no samples");
        if (samples_.cols() == 0) fail(ErrorKind::invalid_input, "dataset has zero features");
        if (static_cast<std::size_t>(samples_.rows()) != labels_.size())
            fail(ErrorKind::invalid_input, "sample count does not match label count");
        if (!samples_.allFinite()) fail(ErrorKind::invalid_input, "dataset contains non-finite values");
        int max_label = -1;
        for (int l : labels_) {
            if (l < 0) fail(ErrorKind::invalid_input, "negative class label " + std::to_string(l));
            max_label = std::max(max_label, l);
        }
        num_classes_ = static_cast<std::size_t>(max_label) + 1;
        counts_.assign(num_classes_, 0);
        for (int l : labels_) ++counts_[static_cast<std::size_t>(l)];
        for (std::size_t c = 0; c < num_classes_; ++c)
            if (counts_[c] == 0)
                fail(ErrorKind::invalid_input, "class " + std::to_string(c) + " has no samples (labels must be 0..C-1)");
        if (!class_names_.empty() && class_names_.size() != num_classes_)
            fail(ErrorKind::invalid_input, "class_names size does not match class count");
    }

    const Matrix& samples() const noexcept { return samples_; }
    std::span<const int> labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t features() const noexcept { return static_cast<std::size_t>(samples_.cols()); }
    std::size_t num_classes() const noexcept { return num_classes_; }
    std::size_t class_count(std::size_t c) const { return counts_.at(c); }
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }

private:
    Matrix samples_;
    std::vector<int> labels_;
    std::vector<std::string> class_names_;
    std::size_t num_classes_ = 0;
    std::vector<std::size_t> counts_;
};

// Shrinkage strength: auto uses 1e-3.
struct LambdaMode {
    static constexpr double auto_value = 1e-3;

    static LambdaMode automatic() { return {}; }
    static LambdaMode fixed(double lambda) {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            fail(ErrorKind::invalid_argument, "shrinkage lambda must be a finite non-negative number");
        return LambdaMode{lambda};
    }

    double value() const { return fixed_.value_or(auto_value); }
    bool is_auto() const { return !fixed_.has_value(); }

    std::optional<double> fixed_;
};

// Linear discriminant analysis with a pooled, shrunk covariance
//   S = Sigma + lambda * (trace(Sigma) / p) * I.
// When p exceeds the training size the inverse is applied through the
// N x N capacitance matrix (Woodbury), so S is never formed explicitly.
class LdaModel {
public:
    std::size_t num_classes() const noexcept { return static_cast<std::size_t>(class_means_.rows()); }
    std::size_t features() const noexcept { return static_cast<std::size_t>(class_means_.cols()); }

    const Matrix& class_means() const noexcept { return class_means_; }  // C x p
    const Vector& log_priors() const noexcept { return log_priors_; }
    double shrinkage_lambda() const noexcept { return lambda_; }
    double ridge() const noexcept { return ridge_; }          // lambda * trace / p actually added
    double covariance_trace() const noexcept { return trace_; }
    bool low_rank() const noexcept { return low_rank_; }

    // Discriminant weights, one column per class: S^{-1} mu_c.
    const Matrix& coefficients() const noexcept { return coef_; }
    const Vector& intercepts() const noexcept { return intercept_; }

    Vector scores(const Eigen::Ref<const Vector>& x) const {
        check_width(static_cast<std::size_t>(x.size()));
        return coef_.transpose() * x + intercept_;
    }

    // argmax of the discriminant score; ties go to the lower class index.
    int predict(const Eigen::Ref<const Vector>& x) const {
        const Vector s = scores(x);
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < s.size(); ++c)
            if (s[c] > s[best]) best = c;
        return static_cast<int>(best);
    }

    int predict(std::span<const double> x) const {
        return predict(Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())));
    }

    // Explicit p x p shrunk covariance. Intended for inspection on small p.
    Matrix shrunk_covariance() const {
        const auto p = static_cast<Eigen::Index>(features());
        Matrix s = Matrix::Identity(p, p) * ridge_;
        if (low_rank_)
            s.noalias() += basis_.transpose() * basis_;
        else
            s += dense_cov_;
        return s;
    }

private:
    friend LdaModel lda_fit(const Eigen::Ref<const Matrix>&, std::span<const int>, std::size_t, LambdaMode);

    void check_width(std::size_t n) const {
        if (n != features())
            fail(ErrorKind::invalid_argument, "feature vector has length " + std::to_string(n) + ", model expects " +
                                                  std::to_string(features()));
    }

    Matrix class_means_;
    Vector log_priors_;
    double lambda_ = 0.0;
    double ridge_ = 0.0;
    double trace_ = 0.0;
    bool low_rank_ = false;
    Matrix dense_cov_;  // Sigma, when !low_rank_
    Matrix basis_;      // rows U with Sigma = U^T U, when low_rank_
    Matrix coef_;
    Vector intercept_;
};

inline LdaModel lda_fit(const Eigen::Ref<const Matrix>& x, std::span<const int> labels, std::size_t num_classes,
                        LambdaMode lambda_mode = LambdaMode::automatic()) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (p == 0) fail(ErrorKind::invalid_input, "cannot fit LDA on zero features");
    if (static_cast<std::size_t>(n) != labels.size())
        fail(ErrorKind::invalid_argument, "sample count does not match label count");
    if (num_classes < 2) fail(ErrorKind::invalid_input, "LDA needs at least two classes");
    if (n < 2) fail(ErrorKind::invalid_input, "LDA needs at least two training samples");

    const auto c_count = static_cast<Eigen::Index>(num_classes);
    Matrix means = Matrix::Zero(c_count, p);
    std::vector<std::size_t> counts(num_classes, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        if (l < 0 || static_cast<std::size_t>(l) >= num_classes)
            fail(ErrorKind::invalid_input, "label " + std::to_string(l) + " out of range");
        means.row(l) += x.row(i);
        ++counts[static_cast<std::size_t>(l)];
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (counts[c] == 0)
            fail(ErrorKind::invalid_input, "class " + std::to_string(c) + " has no training samples");
        means.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
    }

    Matrix centered(n, p);
    for (Eigen::Index i = 0; i < n; ++i) centered.row(i) = x.row(i) - means.row(labels[static_cast<std::size_t>(i)]);
    const double dof = n > c_count ? static_cast<double>(n - c_count) : static_cast<double>(n);

    LdaModel m;
    m.class_means_ = means;
    m.lambda_ = lambda_mode.value();
    m.trace_ = centered.squaredNorm() / dof;
    const double scale = m.trace_ > 0.0 ? m.trace_ / static_cast<double>(p) : 1.0;
    m.ridge_ = m.lambda_ * scale;
    if (!(m.ridge_ > 0.0) && m.trace_ == 0.0)
        fail(ErrorKind::invalid_input, "covariance is zero and lambda is 0: discriminant undefined");

    m.log_priors_.resize(c_count);
    for (std::size_t c = 0; c < num_classes; ++c)
        m.log_priors_[static_cast<Eigen::Index>(c)] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));

    const Matrix rhs = means.transpose();  // p x C
    if (p > n) {
        // S = ridge I + U^T U with U = centered / sqrt(dof) (n x p).
        // S^{-1} B = (B - U^T K^{-1} U B) / ridge, K = ridge I + U U^T.
        m.low_rank_ = true;
        m.basis_ = centered / std::sqrt(dof);
        if (!(m.ridge_ > 0.0)) fail(ErrorKind::invalid_input, "lambda must be > 0 when features exceed samples");
        Matrix k = m.basis_ * m.basis_.transpose();
        k.diagonal().array() += m.ridge_;
        Eigen::LLT<Matrix> llt(k);
        if (llt.info() != Eigen::Success) fail(ErrorKind::invariant, "capacitance matrix is not positive definite");
        const Matrix ub = m.basis_ * rhs;
        m.coef_ = (rhs - m.basis_.transpose() * llt.solve(ub)) / m.ridge_;
    } else {
        m.dense_cov_ = centered.transpose() * centered / dof;
        Matrix s = m.dense_cov_;
        s.diagonal().array() += m.ridge_;
        Eigen::LLT<Matrix> llt(s);
        if (llt.info() != Eigen::Success)
            fail(ErrorKind::invalid_input, "shrunk covariance is singular; use a positive lambda");
        m.coef_ = llt.solve(rhs);
    }

    m.intercept_.resize(c_count);
    for (Eigen::Index c = 0; c < c_count; ++c)
        m.intercept_[c] = -0.5 * means.row(c).dot(m.coef_.col(c)) + m.log_priors_[c];
    return m;
}

inline LdaModel lda_fit(const LabeledDataset& train, LambdaMode lambda_mode = LambdaMode::automatic()) {
    return lda_fit(train.samples(), train.labels(), train.num_classes(), lambda_mode);
}

// --- split protocols --------------------------------------------------------

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;

    friend bool operator==(const Split&, const Split&) = default;
};

struct SplitProtocol {
    enum class Kind { fixed_folds, random_stratified };

    Kind kind = Kind::random_stratified;
    std::vector<Split> folds;                    // fixed_folds only
    std::optional<std::size_t> train_per_class;  // random_stratified only
    std::size_t repeats = 1;
    std::uint64_t seed = 0;

    static SplitProtocol fixed(std::vector<Split> folds) {
        SplitProtocol p;
        p.kind = Kind::fixed_folds;
        p.folds = std::move(folds);
        p.repeats = 1;
        return p;
    }

    static SplitProtocol random(std::size_t train_per_class, std::size_t repeats, std::uint64_t seed) {
        SplitProtocol p;
        p.kind = Kind::random_stratified;
        p.train_per_class = train_per_class;
        p.repeats = repeats;
        p.seed = seed;
        return p;
    }

    void validate() const {
        if (repeats == 0) fail(ErrorKind::invalid_argument, "repeats must be >= 1");
        if (kind == Kind::fixed_folds) {
            if (folds.empty()) fail(ErrorKind::invalid_argument, "fixed-folds protocol needs at least one fold");
            if (train_per_class) fail(ErrorKind::invalid_argument, "fixed-folds protocol takes no train_per_class");
        } else {
            if (!train_per_class) fail(ErrorKind::invalid_argument, "random-stratified protocol needs train_per_class");
            if (*train_per_class == 0) fail(ErrorKind::invalid_argument, "train_per_class must be >= 1");
            if (!folds.empty()) fail(ErrorKind::invalid_argument, "random-stratified protocol takes no folds");
        }
    }
};

inline std::vector<Split> make_splits(const LabeledDataset& ds, const SplitProtocol& proto) {
    proto.validate();
    const std::size_t m = ds.size();
    if (proto.kind == SplitProtocol::Kind::fixed_folds) {
        for (std::size_t f = 0; f < proto.folds.size(); ++f) {
            const auto& split = proto.folds[f];
            const std::string where = "fold " + std::to_string(f);
            if (split.train.empty() || split.test.empty())
                fail(ErrorKind::invalid_argument, where + " has an empty train or test set");
            std::vector<int> seen(m, 0);
            for (auto i : split.train) {
                if (i >= m) fail(ErrorKind::invalid_argument, where + ": index " + std::to_string(i) + " out of range");
                if (seen[i]++) fail(ErrorKind::invalid_argument, where + ": index " + std::to_string(i) + " repeated");
            }
            for (auto i : split.test) {
                if (i >= m) fail(ErrorKind::invalid_argument, where + ": index " + std::to_string(i) + " out of range");
                if (seen[i]++)
                    fail(ErrorKind::invalid_argument, where + ": index " + std::to_string(i) + " in both train and test");
            }
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                fail(ErrorKind::invalid_argument, where + " does not cover every sample");
        }
        return proto.folds;
    }

    const std::size_t per_class = *proto.train_per_class;
    std::vector<std::vector<std::size_t>> by_class(ds.num_classes());
    for (std::size_t i = 0; i < m; ++i) by_class[static_cast<std::size_t>(ds.labels()[i])].push_back(i);
    for (std::size_t c = 0; c < by_class.size(); ++c)
        if (per_class >= by_class[c].size())
            fail(ErrorKind::invalid_argument, "train_per_class=" + std::to_string(per_class) + " leaves no test sample in class " +
                                                  std::to_string(c) + " (size " + std::to_string(by_class[c].size()) + ")");

    Rng rng(proto.seed);
    std::vector<Split> out;
    out.reserve(proto.repeats);
    for (std::size_t r = 0; r < proto.repeats; ++r) {
        Split split;
        for (auto members : by_class) {
            rng.shuffle(members);
            split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
            split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(per_class), members.end());
        }
        std::sort(split.train.begin(), split.train.end());
        std::sort(split.test.begin(), split.test.end());
        out.push_back(std::move(split));
    }
    return out;
}

// --- evaluation -------------------------------------------------------------

struct EvalReport {
    std::vector<double> per_split_accuracy;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // sample standard deviation, 0 for one split
    std::vector<std::vector<std::int64_t>> confusion;  // [true][predicted], summed over splits

    std::size_t num_classes() const noexcept { return confusion.size(); }
};

struct EvalOptions {
    LambdaMode lambda = LambdaMode::automatic();
    unsigned jobs = 1;  // splits evaluated concurrently
};

namespace detail {

inline Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = x.row(static_cast<Eigen::Index>(rows[k]));
    return out;
}

struct SplitOutcome {
    double accuracy = 0.0;
    std::vector<std::vector<std::int64_t>> confusion;
};

inline SplitOutcome run_split(const LabeledDataset& ds, const Split& split, LambdaMode lambda) {
    std::vector<int> train_labels;
    train_labels.reserve(split.train.size());
    for (auto i : split.train) train_labels.push_back(ds.labels()[i]);
    const LdaModel model = lda_fit(gather_rows(ds.samples(), split.train), train_labels, ds.num_classes(), lambda);

    SplitOutcome out;
    out.confusion.assign(ds.num_classes(), std::vector<std::int64_t>(ds.num_classes(), 0));
    std::size_t correct = 0;
    for (auto i : split.test) {
        const int truth = ds.labels()[i];
        const int pred = model.predict(Vector(ds.samples().row(static_cast<Eigen::Index>(i)).transpose()));
        ++out.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(pred)];
        if (pred == truth) ++correct;
    }
    out.accuracy = static_cast<double>(correct) / static_cast<double>(split.test.size());
    return out;
}

}  // namespace detail

inline EvalReport summarize(const std::vector<double>& accuracies, std::vector<std::vector<std::int64_t>> confusion) {
    EvalReport report;
    report.per_split_accuracy = accuracies;
    report.confusion = std::move(confusion);
    const double k = static_cast<double>(accuracies.size());
    if (!accuracies.empty()) report.mean_accuracy = std::accumulate(accuracies.begin(), accuracies.end(), 0.0) / k;
    if (accuracies.size() > 1) {
        double ss = 0.0;
        for (double a : accuracies) ss += (a - report.mean_accuracy) * (a - report.mean_accuracy);
        report.std_accuracy = std::sqrt(ss / (k - 1.0));
    }
    return report;
}

// Fits on each split's training rows, predicts its test rows, and aggregates.
inline EvalReport evaluate(const LabeledDataset& ds, const SplitProtocol& proto, const EvalOptions& options = {}) {
    const std::vector<Split> splits = make_splits(ds, proto);
    std::vector<detail::SplitOutcome> outcomes(splits.size());

    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(splits.size())));
    if (jobs == 1) {
        for (std::size_t s = 0; s < splits.size(); ++s) outcomes[s] = detail::run_split(ds, splits[s], options.lambda);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t s = w; s < splits.size(); s += jobs)
                        outcomes[s] = detail::run_split(ds, splits[s], options.lambda);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<double> accuracies;
    std::vector<std::vector<std::int64_t>> confusion(ds.num_classes(), std::vector<std::int64_t>(ds.num_classes(), 0));
    for (const auto& o : outcomes) {
        accuracies.push_back(o.accuracy);
        for (std::size_t a = 0; a < confusion.size(); ++a)
            for (std::size_t b = 0; b < confusion.size(); ++b) confusion[a][b] += o.confusion[a][b];
    }
    return summarize(accuracies, std::move(confusion));
}

}  // namespace visgraph

#endif  // VISGRAPH_CLASSIFY_HPP
