// quatspec: quaternion spectral toolkit command line.
//
// Subcommands: qft, spectrum, svd, clip, bench, selftest, gen.
// Exit codes: 0 ok, 1 selftest failure, 2 malformed input file,
// 3 bad flags, 4 oracle size guard, 5 missing spatial support.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quatspec/circulant.hpp"
#include "quatspec/kernels.hpp"
#include "quatspec/linalg.hpp"
#include "quatspec/qft.hpp"
#include "quatspec/random.hpp"
#include "quatspec/selftest.hpp"
#include "quatspec/spectral_clip.hpp"
#include "quatspec/tensor_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitParse = 2;
constexpr int kExitFlags = 3;
constexpr int kExitOracleGuard = 4;
constexpr int kExitSupport = 5;

struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

quatspec::Axis parse_axis(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw FlagError("--axis expects three comma-separated reals");
        }
    }
    if (parts.size() != 3) throw FlagError("--axis expects three comma-separated reals");
    try {
        return quatspec::Axis{parts[0], parts[1], parts[2]};
    } catch (const std::domain_error&) {
        throw FlagError("--axis must have a nonzero direction");
    }
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw quatspec::TensorFileError("cannot write " + path);
    out << payload;
}

double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

// Residual of every eigenpair, via the operator's own matvec.
double spectrum_residual_max(const quatspec::QTensor& kernel,
                             const quatspec::LeftSpectrum& s) {
    using namespace quatspec;
    double worst = 0;
    if (kernel.is_vector()) {
        const CirculantOp op{kernel};
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            const QTensor alpha = circulant_eigenvector(kernel.size(), s.axis, k);
            worst = std::max(worst,
                             frobenius_norm(op.matvec(alpha) - alpha.scaled_left(s.values[k])));
        }
        return worst;
    }
    const DoublyBlockCirculantOp op{kernel};
    const std::size_t m = kernel.rows(), n = kernel.cols();
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const QTensor alpha = unvec_2d(circulant_eigenvector_2d(m, n, s.axis, u, v), m, n);
            worst = std::max(worst, frobenius_norm(op.matvec(alpha) -
                                                   alpha.scaled_left(s.values.at(u, v))));
        }
    return worst;
}

int cmd_qft(const std::string& in, const std::string& out, const std::string& axis_text,
            const std::string& side_text, bool inverse, bool asym) {
    using namespace quatspec;
    const Axis axis = parse_axis(axis_text);
    Side side;
    if (side_text == "L" || side_text == "l")
        side = Side::Left;
    else if (side_text == "R" || side_text == "r")
        side = Side::Right;
    else
        throw FlagError("--side expects L or R");

    const QTensorFile file = read_qtensor_file(in);
    const QftPlan plan{file.tensor.shape(), axis, side,
                       inverse ? Direction::Inverse : Direction::Forward,
                       asym ? Normalization::Asymmetric : Normalization::Symmetric};
    emit(out, serialize_qtensor({fast_transform(file.tensor, plan), std::nullopt}));
    return kExitOk;
}

int cmd_spectrum(const std::string& in, const std::string& out, const std::string& axis_text) {
    using namespace quatspec;
    const Axis axis = parse_axis(axis_text);
    const QTensorFile file = read_qtensor_file(in);
    const LeftSpectrum s =
        file.tensor.is_vector()
            ? left_spectrum(CirculantOp{file.tensor}, axis)
            : left_spectrum_2d(DoublyBlockCirculantOp{file.tensor}, axis);

    std::ostringstream doc;
    doc << "{\n  \"axis\": [" << detail::format_double(axis.direction().x) << ", "
        << detail::format_double(axis.direction().y) << ", "
        << detail::format_double(axis.direction().z) << "],\n"
        << "  \"ordering\": \"value k pairs with column k of the inverse QFT matrix"
           " (2D: grid frequency (u,v), coordinate map k = i + M j)\",\n"
        << "  \"normalization\": \"asymmetric right QFT\",\n"
        << "  \"residual_max\": " << detail::format_double(spectrum_residual_max(file.tensor, s))
        << ",\n  \"values\": " << serialize_qtensor({s.values, std::nullopt}) << "}\n";
    emit(out, doc.str());
    return kExitOk;
}

int cmd_svd(const std::string& in, const std::string& out, const std::string& axis_text,
            bool oracle) {
    using namespace quatspec;
    const Axis axis = parse_axis(axis_text);
    const QTensorFile file = read_qtensor_file(in);

    auto sigma = singular_values(file.tensor, axis);
    std::sort(sigma.begin(), sigma.end());  // ascending for plotting

    if (oracle) {
        for (std::size_t d : file.tensor.shape())
            if (d > 8) throw GuardError("--oracle allows padded sizes of at most 8 per side");
        auto brute = file.tensor.is_vector()
                         ? qsvd(CirculantOp{file.tensor}.materialize())
                         : qsvd(DoublyBlockCirculantOp{file.tensor}.materialize());
        std::sort(brute.begin(), brute.end());
        double dev = 0;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            dev = std::max(dev, std::abs(sigma[k] - brute[k]));
        std::fprintf(stderr, "oracle_max_deviation=%s\n",
                     quatspec::detail::format_double(dev).c_str());
    }
    emit(out, serialize_csv(sigma));
    return kExitOk;
}

int cmd_clip(const std::string& in, const std::string& out, const std::string& report_path,
             const std::string& axis_text, double threshold, double tolerance_a,
             std::uint64_t seed, bool no_spatial, std::size_t padded) {
    using namespace quatspec;
    const Axis axis = parse_axis(axis_text);
    if (threshold <= 0.0) throw FlagError("--threshold must be positive");
    if (tolerance_a < 0.0) throw FlagError("--tolerance must be nonnegative");

    const QTensorFile file = read_qtensor_file(in);
    if (!file.support && !no_spatial)
        throw SupportError("input file has no \"support\" field (use --no-spatial-clip)");
    std::vector<std::size_t> support =
        file.support ? *file.support : file.tensor.shape();

    // pad a raw filter (shape == declared support) to the transform size
    QTensor kernel = file.tensor;
    if (file.support && kernel.shape() == support) {
        std::vector<std::size_t> padded_shape;
        for (std::size_t d : support)
            padded_shape.push_back(padded ? padded : default_padded_size(d));
        for (std::size_t d = 0; d < padded_shape.size(); ++d)
            if (padded_shape[d] < support[d])
                throw FlagError("--padded is smaller than the filter support");
        kernel = pad_kernel(kernel, padded_shape);
    } else if (padded) {
        throw FlagError("--padded conflicts with an already padded input");
    }

    const auto pre = singular_values(kernel, axis);
    const bool noop = pre.empty() || pre.front() <= threshold;

    ClipOptions options;
    options.spatial_clip = !no_spatial;
    const QTensor freq_clipped = clip(kernel, threshold, axis, support,
                                      ClipOptions{false, 1});
    const QTensor clipped =
        no_spatial ? freq_clipped : clip(kernel, threshold, axis, support, options);

    const auto post_freq = singular_values(freq_clipped, axis);
    const auto post = no_spatial ? post_freq : singular_values(clipped, axis);
    const auto stats = clip_violation_rate(clipped, threshold, tolerance_a, 1000, seed);

    std::ostringstream report;
    report << "{\n"
           << "  \"threshold\": " << detail::format_double(threshold) << ",\n"
           << "  \"tolerance\": " << detail::format_double(tolerance_a) << ",\n"
           << "  \"seed\": " << seed << ",\n"
           << "  \"no-op\": " << (noop ? "true" : "false") << ",\n"
           << "  \"pre\": {\"max_sigma\": " << detail::format_double(pre.front())
           << ", \"mean_sigma\": " << detail::format_double(mean(pre)) << "},\n"
           << "  \"post_frequency\": {\"max_sigma\": " << detail::format_double(post_freq.front())
           << ", \"mean_sigma\": " << detail::format_double(mean(post_freq)) << "},\n"
           << "  \"post\": {\"max_sigma\": " << detail::format_double(post.front())
           << ", \"mean_sigma\": " << detail::format_double(mean(post)) << "},\n"
           << "  \"monte_carlo\": {\"samples\": " << stats.samples
           << ", \"violations\": " << stats.violations << ", \"violation_rate\": "
           << detail::format_double(double(stats.violations) / double(stats.samples))
           << ", \"max_ratio\": " << detail::format_double(stats.max_ratio) << "}\n"
           << "}\n";

    emit(out, serialize_qtensor({clipped, support}));
    if (report_path.empty())
        std::fputs(report.str().c_str(), stderr);
    else
        emit(report_path, report.str());
    return kExitOk;
}

int cmd_bench(const std::string& sizes_text, const std::string& out) {
    using namespace quatspec;
    std::vector<std::size_t> sizes;
    std::stringstream ss(sizes_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const long v = std::stol(item);
            if (v < 2) throw FlagError("--sizes entries must be at least 2");
            sizes.push_back(static_cast<std::size_t>(v));
        } catch (const FlagError&) {
            throw;
        } catch (const std::exception&) {
            throw FlagError("--sizes expects a comma-separated list of integers");
        }
    }
    if (sizes.empty()) throw FlagError("--sizes expects at least one size");

    const Axis axis{1, 1, 1};
    const auto time_ms = [](auto&& fn) {
        using clock = std::chrono::steady_clock;
        int reps = 0;
        const auto start = clock::now();
        double elapsed = 0;
        do {
            fn();
            ++reps;
            elapsed = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        } while (elapsed < 30.0 && reps < 1000);
        return elapsed / reps;
    };

    std::string csv = "N,clip_ms,oracle_ms\n";
    std::vector<double> log_n, log_t;
    for (std::size_t n : sizes) {
        const std::size_t support = std::min<std::size_t>(n, 9);
        const QTensor kernel = pad_kernel(pattern_kernel(support), {n, n});
        const double threshold = 0.5 * spectral_norm(kernel, axis);

        const double clip_ms = time_ms([&] {
            volatile double sink =
                max_abs(clip(kernel, threshold, axis, {support, support}));
            (void)sink;
        });
        log_n.push_back(std::log(double(n)));
        log_t.push_back(std::log(clip_ms));

        csv += std::to_string(n) + "," + detail::format_double(clip_ms);
        if (n <= 8) {
            const double oracle_ms = time_ms([&] {
                volatile double sink = max_abs(oracle_clip(kernel, threshold, axis));
                (void)sink;
            });
            csv += "," + detail::format_double(oracle_ms);
        } else {
            csv += ",";
        }
        csv += "\n";
    }

    if (sizes.size() >= 2) {
        const double mx = mean(log_n), my = mean(log_t);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            num += (log_n[i] - mx) * (log_t[i] - my);
            den += (log_n[i] - mx) * (log_n[i] - mx);
        }
        std::fprintf(stderr, "clip_loglog_slope=%s\n",
                     quatspec::detail::format_double(num / den).c_str());
    }
    emit(out, csv);
    return kExitOk;
}

int cmd_selftest() {
    const auto results = quatspec::run_selftest();
    std::fputs(quatspec::selftest_report(results).c_str(), stdout);
    return quatspec::selftest_passed(results) ? kExitOk : kExitSelftest;
}

int cmd_gen(const std::string& pattern, std::size_t size, std::size_t padded, std::uint64_t seed,
            std::size_t dims, const std::string& out) {
    using namespace quatspec;
    if (dims != 1 && dims != 2) throw FlagError("--dims expects 1 or 2");
    if (size == 0) throw FlagError("--size must be positive");

    QTensor filter = dims == 1 ? QTensor{{size}} : QTensor{{size, size}};
    if (pattern == "test9") {
        if (dims != 2) throw FlagError("pattern test9 is 2D");
        filter = pattern_kernel(size);
    } else if (pattern == "delta") {
        filter[0] = Quaternion{1, 0, 0, 0};
    } else if (pattern == "random") {
        Rng rng{seed};
        for (auto& q : filter.data()) q = rng.quaternion();
    } else {
        throw FlagError("--pattern expects test9, delta or random");
    }

    std::vector<std::size_t> support = filter.shape();
    std::vector<std::size_t> padded_shape;
    for (std::size_t d : support) padded_shape.push_back(padded ? padded : default_padded_size(d));
    emit(out, serialize_qtensor({pad_kernel(filter, padded_shape), support}));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quatspec: quaternion Fourier transforms, circulant spectra and spectral-norm "
                 "clipping for quaternionic convolutions"};
    app.require_subcommand(1);

    std::string in, out = "-", report_path, axis_text = "1,1,1", side = "L";
    std::string sizes = "4,6,8,16,32";
    std::string pattern = "test9";
    double threshold = 0, tolerance_a = 0.1;
    std::uint64_t seed = 0;
    std::size_t padded = 0, gen_size = 9, gen_dims = 2;
    bool inverse = false, asym = false, oracle = false, no_spatial = false;

    auto* qft = app.add_subcommand("qft", "apply a quaternion Fourier transform to a tensor file");
    qft->add_option("input", in, "QTensor JSON file")->required();
    qft->add_option("--out", out, "output path (default stdout)");
    qft->add_option("--axis", axis_text, "transform axis x,y,z (default 1,1,1)");
    qft->add_option("--side", side, "L or R (default L)");
    qft->add_flag("--inverse", inverse, "inverse transform");
    qft->add_flag("--asym", asym, "asymmetric normalization (coefficient 1)");

    auto* spectrum = app.add_subcommand("spectrum", "left eigenvalues of the circulant operator");
    spectrum->add_option("input", in, "kernel QTensor JSON file")->required();
    spectrum->add_option("--out", out, "output path (default stdout)");
    spectrum->add_option("--axis", axis_text, "axis x,y,z");

    auto* svd = app.add_subcommand("svd", "singular values of the convolution operator (CSV)");
    svd->add_option("input", in, "kernel QTensor JSON file")->required();
    svd->add_option("--out", out, "output path (default stdout)");
    svd->add_option("--axis", axis_text, "axis x,y,z");
    svd->add_flag("--oracle", oracle, "cross-check against the brute-force QSVD (N <= 8)");

    auto* clip = app.add_subcommand("clip", "clip the spectral norm of a convolution kernel");
    clip->add_option("input", in, "kernel QTensor JSON file")->required();
    clip->add_option("--out", out, "clipped kernel path (default stdout)");
    clip->add_option("--report", report_path, "report path (default stderr)");
    clip->add_option("--axis", axis_text, "axis x,y,z");
    clip->add_option("--threshold", threshold, "spectral norm budget")->required();
    clip->add_option("--tolerance", tolerance_a, "Monte-Carlo tolerance a (default 0.1)");
    clip->add_option("--seed", seed, "Monte-Carlo seed");
    clip->add_option("--padded", padded, "transform size for raw filters (default 4k, even)");
    clip->add_flag("--no-spatial-clip", no_spatial, "skip the spatial-support zeroing step");

    auto* bench = app.add_subcommand("bench", "time the clip pipeline against the QSVD baseline");
    bench->add_option("--sizes", sizes, "comma-separated grid sizes");
    bench->add_option("--out", out, "CSV path (default stdout)");

    app.add_subcommand("selftest", "run the full invariant suite");

    auto* gen = app.add_subcommand("gen", "emit a padded demo kernel file");
    gen->add_option("--pattern", pattern, "test9 | delta | random");
    gen->add_option("--size", gen_size, "filter support size (default 9)");
    gen->add_option("--padded", padded, "padded size (default 4k, even)");
    gen->add_option("--seed", seed, "seed for --pattern random");
    gen->add_option("--dims", gen_dims, "1 or 2 (default 2)");
    gen->add_option("--out", out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitFlags;
    }

    try {
        if (app.got_subcommand("qft")) return cmd_qft(in, out, axis_text, side, inverse, asym);
        if (app.got_subcommand("spectrum")) return cmd_spectrum(in, out, axis_text);
        if (app.got_subcommand("svd")) return cmd_svd(in, out, axis_text, oracle);
        if (app.got_subcommand("clip"))
            return cmd_clip(in, out, report_path, axis_text, threshold, tolerance_a, seed,
                            no_spatial, padded);
        if (app.got_subcommand("bench")) return cmd_bench(sizes, out);
        if (app.got_subcommand("selftest")) return cmd_selftest();
        if (app.got_subcommand("gen"))
            return cmd_gen(pattern, gen_size, padded, seed, gen_dims, out);
    } catch (const FlagError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFlags;
    } catch (const GuardError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitOracleGuard;
    } catch (const SupportError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSupport;
    } catch (const quatspec::TensorFileError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFlags;
    }
    return kExitOk;
}
