// elfic: exact intersection-cohomology calculator for elliptically fibered
// Calabi-Yau models.  Subcommands: analyze, ic-stalk, cohomology, mw-forms.

#include "elfic/analyze.hpp"
#include "elfic/iclocal.hpp"
#include "elfic/mwforms.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw elfic::InputError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

elfic::Complex parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0, im = 0;
    char comma = 0;
    in >> re;
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw elfic::InputError("expected complex number as 're' or 're,im'");
    }
    return {re, im};
}

// "re0:re1:im0:im1:n" -> about n points on a regular grid in the rectangle.
std::vector<elfic::Complex> parse_grid(const std::string& spec) {
    std::vector<double> v;
    std::stringstream in(spec);
    std::string part;
    while (std::getline(in, part, ':')) v.push_back(std::stod(part));
    if (v.size() != 5 || v[4] < 1)
        throw elfic::InputError("grid spec must be re0:re1:im0:im1:count");
    int n = static_cast<int>(v[4]);
    int side = std::max(1, static_cast<int>(std::round(std::sqrt(double(n)))));
    std::vector<elfic::Complex> pts;
    for (int i = 0; i < side && static_cast<int>(pts.size()) < n; ++i)
        for (int j = 0; j < side && static_cast<int>(pts.size()) < n; ++j) {
            double fx = side == 1 ? 0.5 : double(i) / (side - 1);
            double fy = side == 1 ? 0.5 : double(j) / (side - 1);
            pts.emplace_back(v[0] + fx * (v[1] - v[0]), v[2] + fy * (v[3] - v[2]));
        }
    return pts;
}

std::string run_length(const std::vector<int>& v) {
    if (!v.empty()) {
        bool all_equal = std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; });
        if (all_equal && v.size() > 1)
            return std::to_string(v[0]) + "x" + std::to_string(v.size());
    }
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

int cmd_analyze(const std::vector<std::string>& model_paths, const std::string& format,
                const std::string& monodromy_path) {
    if (model_paths.size() > 1 && !monodromy_path.empty())
        throw elfic::InputError("--monodromy goes with a single model file");
    std::optional<elfic::MonodromyRep> rep;
    if (!monodromy_path.empty())
        rep.emplace(elfic::parse_matrix_list(read_file(monodromy_path)));

    // Models are independent; analyze them concurrently, print in order.
    std::vector<std::future<elfic::AnalysisReport>> jobs;
    for (const auto& path : model_paths) {
        std::string text = read_file(path);  // surface I/O errors up front
        jobs.push_back(std::async(std::launch::async, [text, rep]() {
            return elfic::analyze_model(elfic::load_model(text), rep);
        }));
    }
    int exit_code = kExitOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        elfic::AnalysisReport report = jobs[i].get();
        if (model_paths.size() > 1) std::cout << "== " << model_paths[i] << "\n";
        std::cout << (format == "json" ? elfic::report_to_json(report)
                                       : elfic::report_to_text(report));
        if (!report.all_ok()) exit_code = kExitCheckFailure;
    }
    return exit_code;
}

int cmd_ic_stalk(const std::string& matrix_path) {
    auto mats = elfic::parse_matrix_list(read_file(matrix_path));
    if (mats.empty()) throw elfic::InputError("matrix file holds no matrices");
    elfic::NilpotentTuple tuple(mats[0].rows(), mats);
    auto dims = elfic::ic_stalk_dims(tuple);
    for (std::size_t p = 0; p < dims.size(); ++p) {
        if (p) std::cout << " ";
        std::cout << "H" << p << "=" << dims[p];
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_cohomology(const std::string& rep_path, const std::string& format) {
    elfic::MonodromyRep rep(elfic::parse_matrix_list(read_file(rep_path)));
    auto push = elfic::pushforward_cohomology(rep);
    int open = elfic::h1_open(rep);
    auto split = elfic::bulk_brane_split(rep);
    if (format == "json") {
        std::ostringstream o;
        o << "{\n  \"pushforward\": [" << push.h0 << ", " << push.h1 << ", " << push.h2
          << "],\n  \"h1_open\": " << open << ",\n  \"split\": {\"bulk\": " << split.bulk_dim
          << ", \"branes\": [";
        for (std::size_t i = 0; i < split.brane_dims.size(); ++i) {
            if (i) o << ", ";
            o << split.brane_dims[i];
        }
        o << "], \"total\": " << split.total_dim << ", \"exact\": "
          << (split.exact ? "true" : "false") << "}\n}\n";
        std::cout << o.str();
    } else {
        std::cout << "pushforward (" << push.h0 << "," << push.h1 << "," << push.h2 << "); open "
                  << open << "; split " << split.bulk_dim << " + [" << run_length(split.brane_dims)
                  << "]" << (split.exact ? "" : " (report only)") << "\n";
    }
    return kExitOk;
}

int cmd_mw_forms(const std::string& model_path, const std::string& sx, const std::string& sy,
                 const std::string& grid_spec, const std::string& loop_center,
                 double loop_radius, int samples, double step, double plaquette) {
    elfic::WeierstrassModel model = elfic::load_model(read_file(model_path));
    elfic::RationalSection section =
        (sx.empty() && sy.empty())
            ? elfic::RationalSection::zero_section()
            : elfic::RationalSection::parse(sx, sy, model.base.coords[0]);

    if (!loop_center.empty()) {
        elfic::Complex center = parse_complex(loop_center);
        auto check = elfic::monodromy_transform_check(model, section, center, loop_radius, samples);
        std::cout << "monodromy [[" << check.matrix[0][0] << "," << check.matrix[0][1] << "],["
                  << check.matrix[1][0] << "," << check.matrix[1][1] << "]] defect "
                  << check.defect << "\n";
        return kExitOk;
    }

    std::vector<elfic::Complex> points = parse_grid(grid_spec);
    auto samples_out = elfic::section_one_form(model, section, points, step);
    double max_omega = 0;
    for (const auto& s : samples_out) {
        std::cout << "b=(" << s.base_point.real() << "," << s.base_point.imag() << ") f=("
                  << s.f1 << "," << s.f2 << ") omega=[" << s.omega[0][0] << "," << s.omega[0][1]
                  << ";" << s.omega[1][0] << "," << s.omega[1][1] << "]\n";
        max_omega = std::max(max_omega, s.max_abs_omega);
    }
    std::cout << "max|omega| = " << max_omega << " over " << samples_out.size() << " samples\n";
    if (!points.empty() && !section.is_zero()) {
        elfic::Complex center = points[points.size() / 2];
        double side = plaquette;
        if (side <= 0) {
            double dist = 1e300;
            for (elfic::Complex r : elfic::discriminant_roots_affine(model))
                dist = std::min(dist, std::abs(center - r));
            side = 0.05 * dist;
        }
        auto [r1, r2] = elfic::plaquette_residual(model, section, center, side);
        std::cout << "plaquette residual (" << r1 << ", " << r2 << ") at side " << side
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection-cohomology calculator for elliptic fibrations"};
    app.require_subcommand(1);

    std::vector<std::string> model_paths;
    std::string model_path, format = "text", monodromy_path, matrix_path, rep_path;
    std::string sx, sy, grid_spec = "-2:2:-2:2:16", loop_center;
    double loop_radius = 0.1, step = 1e-4, plaquette = 0.0;
    int samples = 64;

    auto* analyze = app.add_subcommand("analyze", "analyze a Weierstrass model file");
    analyze->add_option("models", model_paths, "model JSON file(s)")->required();
    analyze->add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--monodromy", monodromy_path, "monodromy matrix file");

    auto* ic = app.add_subcommand("ic-stalk", "IC stalk dimensions of a nilpotent tuple");
    ic->add_option("matrices", matrix_path, "matrix list file")->required();

    auto* coh = app.add_subcommand("cohomology", "local-system cohomology on P^1");
    coh->add_option("rep", rep_path, "monodromy matrix file")->required();
    coh->add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* mw = app.add_subcommand("mw-forms", "numerical Mordell-Weil 1-forms");
    mw->add_option("model", model_path, "model JSON file (P1 base)")->required();
    mw->add_option("--section-x", sx, "section x(b), rational in the affine coordinate");
    mw->add_option("--section-y", sy, "section y(b)");
    mw->add_option("--grid", grid_spec, "grid spec re0:re1:im0:im1:count");
    mw->add_option("--loop-center", loop_center, "loop center 're,im'");
    mw->add_option("--loop-radius", loop_radius, "loop radius");
    mw->add_option("--samples", samples, "samples along the loop");
    mw->add_option("--step", step, "relative finite-difference step");
    mw->add_option("--plaquette", plaquette, "closedness plaquette side");

    try {
        app.parse(argc, argv);
        if (*analyze) return cmd_analyze(model_paths, format, monodromy_path);
        if (*ic) return cmd_ic_stalk(matrix_path);
        if (*coh) return cmd_cohomology(rep_path, format);
        if (*mw)
            return cmd_mw_forms(model_path, sx, sy, grid_spec, loop_center, loop_radius,
                                samples, step, plaquette);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    } catch (const elfic::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const elfic::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const elfic::Error& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
