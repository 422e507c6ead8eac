#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "histoseg/curve.hpp"
#include "histoseg/histogram.hpp"
#include "histoseg/image_io.hpp"
#include "histoseg/metrics.hpp"
#include "histoseg/pipeline.hpp"
#include "histoseg/report.hpp"
#include "histoseg/segment.hpp"

namespace histoseg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

ExitCode exit_code_for(Errc code) noexcept {
    switch (code) {
        case Errc::file_not_found:
        case Errc::malformed_header:
        case Errc::unsupported_bit_depth:
        case Errc::unsupported_format:
        case Errc::image_too_large:
        case Errc::io_error:
            return kIoError;
        case Errc::no_candidate:
        case Errc::degenerate_histogram:
        case Errc::degenerate_range:
        case Errc::zero_reference:
        case Errc::out_of_domain:
            return kAlgorithmFailure;
        case Errc::invalid_argument:
        case Errc::dimension_mismatch:
            return kUsage;
    }
    return kUsage;
}

namespace {

constexpr const char* kVersion = "histoseg 0.1.0";

// Raw flag values; converted to SegmentOptions after parsing so that bad
// values surface as library errors with the usual exit codes.
struct SegmentFlags {
    std::string method = "spline";
    int degree = 10;
    double min_prominence = kDefaultMinProminence;
    double grid_step = kDefaultGridStep;
    std::string boundary = "notaknot";
    std::string preprocess = "none";
    std::string postprocess = "none";
    int blur_length = kDefaultBlurLength;
    int blur_angle = 0;
    int connectivity = 8;
    std::string band;
};

void add_fit_flags(CLI::App* cmd, SegmentFlags& f) {
    cmd->add_option("--degree", f.degree, "Polynomial degree for polyfit")->capture_default_str();
    cmd->add_option("--min-prominence", f.min_prominence,
                    "Reject minima whose prominence is below this fraction of the peak count")
        ->capture_default_str();
    cmd->add_option("--grid-step", f.grid_step, "Derivative scan step in gray levels")
        ->capture_default_str();
    cmd->add_option("--boundary", f.boundary, "Spline end condition")
        ->check(CLI::IsMember({"notaknot", "natural"}))
        ->capture_default_str();
}

void add_segment_flags(CLI::App* cmd, SegmentFlags& f) {
    add_fit_flags(cmd, f);
    cmd->add_option("--preprocess", f.preprocess, "none | equalize | adjust")->capture_default_str();
    cmd->add_option("--postprocess", f.postprocess, "none | blur | small:N")->capture_default_str();
    cmd->add_option("--blur-length", f.blur_length, "Motion blur kernel length (odd)")
        ->capture_default_str();
    cmd->add_option("--blur-angle", f.blur_angle, "Motion blur direction in degrees")
        ->check(CLI::IsMember({0, 90}))
        ->capture_default_str();
    cmd->add_option("--connectivity", f.connectivity, "Component connectivity")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
}

double parse_fraction(std::string_view text) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error(Errc::invalid_argument, "cannot parse '" + std::string(text) + "' as a number");
    }
    return v;
}

SegmentOptions to_options(const SegmentFlags& f) {
    SegmentOptions o;
    o.method = parse_method(f.method);
    o.degree = f.degree;
    o.min_prominence = f.min_prominence;
    o.grid_step = f.grid_step;
    o.boundary = f.boundary == "natural" ? SplineBoundary::natural : SplineBoundary::not_a_knot;
    o.preprocess = parse_preprocess(f.preprocess);
    o.postprocess = parse_postprocess(f.postprocess);
    o.postprocess.blur_length = f.blur_length;
    o.postprocess.blur_angle = f.blur_angle == 90 ? BlurAngle::vertical : BlurAngle::horizontal;
    o.connectivity = f.connectivity == 4 ? Connectivity::four : Connectivity::eight;
    if (!f.band.empty()) {
        const auto comma = f.band.find(',');
        if (comma == std::string::npos) {
            throw Error(Errc::invalid_argument, "--band expects th1,th2");
        }
        const std::string_view band = f.band;
        o.band = std::pair{parse_fraction(band.substr(0, comma)), parse_fraction(band.substr(comma + 1))};
    }
    if (o.postprocess.kind == Postprocess::Kind::blur &&
        (o.postprocess.blur_length < 1 || o.postprocess.blur_length % 2 == 0)) {
        throw Error(Errc::invalid_argument, "--blur-length must be odd and positive");
    }
    if (o.method == Method::polyfit && o.degree < 0) {
        throw Error(Errc::invalid_argument, "--degree must be >= 0");
    }
    return o;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

// --------------------------------------------------------------------------
// hist

void cmd_hist(const fs::path& input, const fs::path& output) {
    const auto img = load_gray(input);
    auto out = open_output(output);
    write_histogram_csv(compute_histogram(img), out);
    finish(out, output);
}

// --------------------------------------------------------------------------
// segment

void cmd_segment(const fs::path& input, const fs::path& output, const SegmentFlags& flags,
                 std::ostream& out) {
    const auto opts = to_options(flags);
    const auto img = load_gray(input);
    const auto result = segment_image(img, opts);
    save_binary(result.image, output);

    json j = result.threshold;
    if (opts.band) j["band"] = {opts.band->first, opts.band->second};
    out << j.dump(2) << '\n';
}

// --------------------------------------------------------------------------
// compare

std::vector<Method> parse_method_list(const std::string& text) {
    std::vector<Method> methods;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        methods.push_back(parse_method(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (methods.empty()) throw Error(Errc::invalid_argument, "--methods is empty");
    return methods;
}

std::string csv_number(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

void cmd_compare(const fs::path& input, const fs::path& reference, const fs::path& output,
                 const std::string& methods_text, std::optional<std::int64_t> ref_contours,
                 const SegmentFlags& flags, std::ostream& out) {
    const auto methods = parse_method_list(methods_text);
    auto opts = to_options(flags);
    const auto img = load_gray(input);
    const auto ref_gray = load_gray(reference);
    if (ref_gray.width() != img.width() || ref_gray.height() != img.height()) {
        throw Error(Errc::dimension_mismatch,
                    "reference is " + std::to_string(ref_gray.width()) + "x" +
                        std::to_string(ref_gray.height()) + " but input is " +
                        std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
    const auto ref = binarize(ref_gray, 0.5);

    json rows = json::array();
    std::ostringstream csv;
    csv << "method,threshold_norm,gray_level,contours_ref,contours_test,deviation,mse_mean,mse_sum\n";
    for (const auto m : methods) {
        opts.method = m;
        const auto seg = segment_image(img, opts);
        const auto report = score(ref, seg.image, opts.connectivity, ref_contours);

        json row = report;
        row["method"] = std::string(to_string(m));
        row["threshold_norm"] = seg.threshold.threshold_norm;
        row["gray_level"] = seg.threshold.gray_level;
        rows.push_back(std::move(row));

        csv << to_string(m) << ',' << csv_number(seg.threshold.threshold_norm) << ','
            << csv_number(seg.threshold.gray_level) << ',' << report.contours_ref << ','
            << report.contours_test << ','
            << (report.deviation ? csv_number(*report.deviation) : std::string{}) << ','
            << csv_number(report.mse_mean) << ',' << csv_number(report.mse_sum) << '\n';
    }

    auto file = open_output(output);
    file << csv.str();
    finish(file, output);

    const json doc = {{"input", input.string()},
                      {"reference", reference.string()},
                      {"width", img.width()},
                      {"height", img.height()},
                      {"rows", rows}};
    out << doc.dump(2) << '\n';
}

// --------------------------------------------------------------------------
// plot

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void write_svg(std::ostream& svg, const Histogram& hist, const Curve1D& curve,
               const std::vector<double>& grid, const std::optional<ThresholdResult>& threshold,
               const std::vector<Minimum>& minima, const std::vector<Minimum>& rejected,
               Method method) {
    constexpr double width = 800.0, height = 420.0;
    constexpr double left = 60.0, right = 20.0, top = 30.0, bottom = 40.0;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

    double y_max = 1.0, y_min = 0.0;
    for (const auto c : hist.counts) y_max = std::max(y_max, static_cast<double>(c));
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = curve.value(grid[i]);
        y_max = std::max(y_max, values[i]);
        y_min = std::min(y_min, values[i]);
    }
    const auto sx = [&](double x) { return left + plot_w * x / 255.0; };
    const auto sy = [&](double y) { return top + plot_h * (y_max - y) / (y_max - y_min); };

    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<!-- generator: " << kVersion << " -->\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";

    svg << "<g class=\"histogram\" fill=\"#9bb7d4\">\n";
    const double bar_w = plot_w / 256.0;
    for (int v = 0; v < kGrayLevels; ++v) {
        if (hist.counts[v] == 0) continue;
        const double y = sy(static_cast<double>(hist.counts[v]));
        svg << "<rect x=\"" << num(sx(v) - bar_w / 2) << "\" y=\"" << num(y) << "\" width=\""
            << num(bar_w) << "\" height=\"" << num(sy(0.0) - y) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<polyline class=\"curve\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        svg << (i ? " " : "") << num(sx(grid[i])) << ',' << num(sy(values[i]));
    }
    svg << "\"/>\n";

    svg << "<line class=\"axis\" x1=\"" << num(left) << "\" y1=\"" << num(sy(0.0)) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(sy(0.0)) << "\" stroke=\"black\"/>\n";
    for (int v = 0; v <= 250; v += 50) {
        svg << "<text x=\"" << num(sx(v)) << "\" y=\"" << num(height - 15)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << v << "</text>\n";
    }

    for (const auto& m : rejected) {
        svg << "<circle class=\"rejected\" cx=\"" << num(sx(m.x)) << "\" cy=\"" << num(sy(m.value))
            << "\" r=\"2\" fill=\"#999999\"/>\n";
    }
    for (const auto& m : minima) {
        svg << "<circle class=\"minimum\" cx=\"" << num(sx(m.x)) << "\" cy=\"" << num(sy(m.value))
            << "\" r=\"4\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"2\"/>\n";
    }

    if (threshold) {
        svg << "<line class=\"threshold\" x1=\"" << num(sx(threshold->gray_level)) << "\" y1=\""
            << num(top) << "\" x2=\"" << num(sx(threshold->gray_level)) << "\" y2=\""
            << num(sy(y_min)) << "\" stroke=\"#2c3e50\" stroke-dasharray=\"6,3\"/>\n"
            << "<text class=\"annotation\" x=\"" << num(left + 5) << "\" y=\"" << num(top - 10)
            << "\" font-size=\"13\">" << to_string(method) << " threshold "
            << num(threshold->gray_level) << " (" << num(threshold->threshold_norm) << ")</text>\n";
    } else {
        svg << "<text class=\"annotation\" x=\"" << num(left + 5) << "\" y=\"" << num(top - 10)
            << "\" font-size=\"13\">" << to_string(method) << ": no threshold</text>\n";
    }
    svg << "</svg>\n";
}

fs::path sidecar_path(const fs::path& svg_path) {
    auto csv = svg_path;
    csv.replace_extension(".csv");
    if (csv == svg_path) csv += ".curve.csv";
    return csv;
}

void cmd_plot(const fs::path& input, const fs::path& output, const SegmentFlags& flags,
              std::ostream& out) {
    const auto opts = to_options(flags);
    if (opts.method == Method::otsu) {
        throw Error(Errc::invalid_argument, "plot supports spline and polyfit only");
    }
    const auto img = load_gray(input);
    const auto hist = compute_histogram(img);
    const auto curve = fit_histogram(hist, opts);
    const auto grid = uniform_grid(curve->lower(), curve->upper(), opts.grid_step);

    auto search = find_minima(*curve, opts.grid_step, opts.min_prominence);
    std::optional<ThresholdResult> threshold;
    if (!search.accepted.empty()) {
        threshold = select_threshold(search.accepted, *curve, opts.grid_step, opts.method);
        threshold->rejected = search.rejected;
    }

    auto svg = open_output(output);
    write_svg(svg, hist, *curve, grid, threshold, search.accepted, search.rejected, opts.method);
    finish(svg, output);

    const auto csv_path = sidecar_path(output);
    auto csv = open_output(csv_path);
    write_curve_csv(*curve, opts.grid_step, csv);
    finish(csv, csv_path);

    json j = {{"svg", output.string()}, {"csv", csv_path.string()}};
    j["threshold"] = threshold ? json(*threshold) : json(nullptr);
    out << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Histogram-based threshold selection and binary segmentation", "histoseg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string input, output, reference;
    SegmentFlags flags;

    auto* hist = app.add_subcommand("hist", "Write the 256-bin histogram as CSV");
    hist->add_option("input", input, "Input image (PGM/PPM/PNG)")->required();
    hist->add_option("output", output, "Output CSV")->required();

    auto* segment = app.add_subcommand("segment", "Select a threshold and write the binary image");
    segment->add_option("input", input, "Input image")->required();
    segment->add_option("output", output, "Output PGM")->required();
    segment->add_option("--method", flags.method, "spline | polyfit | otsu")->capture_default_str();
    segment->add_option("--band", flags.band, "Dual threshold th1,th2 (normalized)");
    add_segment_flags(segment, flags);

    std::string methods = "spline,polyfit,otsu";
    std::optional<std::int64_t> ref_contours;
    auto* compare = app.add_subcommand("compare", "Score methods against a reference segmentation");
    compare->add_option("input", input, "Input image")->required();
    compare->add_option("reference", reference, "Reference segmentation")->required();
    compare->add_option("output", output, "Output CSV table")->required();
    compare->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
    compare->add_option("--ref-contours", ref_contours,
                        "Use this reference contour count instead of counting the reference");
    add_segment_flags(compare, flags);

    auto* plot = app.add_subcommand("plot", "Plot histogram, fitted curve and minima as SVG");
    plot->add_option("input", input, "Input image")->required();
    plot->add_option("output", output, "Output SVG; the curve CSV goes next to it")->required();
    plot->add_option("--method", flags.method, "spline | polyfit")->capture_default_str();
    add_fit_flags(plot, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (hist->parsed()) {
            cmd_hist(input, output);
        } else if (segment->parsed()) {
            cmd_segment(input, output, flags, out);
        } else if (compare->parsed()) {
            cmd_compare(input, reference, output, methods, ref_contours, flags, out);
        } else if (plot->parsed()) {
            cmd_plot(input, output, flags, out);
        }
    } catch (const Error& e) {
        err << "histoseg: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "histoseg: " << e.what() << '\n';
        return kIoError;
    }
    return kSuccess;
}

}  // namespace histoseg::cli
