#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssrg/color.hpp"
#include "ssrg/pipeline.hpp"
#include "ssrg/png_io.hpp"
#include "ssrg/render.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoSeeds = 3;
constexpr int kExitIo = 4;

json report_json(const ssrg::SegmentResult& result) {
  json j;
  j["complexity"] = {{"f_eg", result.complexity.f_eg},
                     {"f_te", result.complexity.f_te},
                     {"f_avg", result.complexity.f_avg},
                     {"desired_regions", result.complexity.desired_regions}};
  j["counts"] = {{"inpr", result.counts.inpr},
                 {"pr1", result.counts.pr1},
                 {"pr2", result.counts.pr2},
                 {"fpr", result.counts.fpr}};
  j["evaluation"] = {{"f_prime", result.evaluation.f_prime},
                     {"q", result.evaluation.q},
                     {"regions", result.evaluation.region_count}};
  return j;
}

void write_text_report(std::ostream& out, const ssrg::SegmentResult& result) {
  out << "f_eg=" << result.complexity.f_eg << '\n'
      << "f_te=" << result.complexity.f_te << '\n'
      << "f_avg=" << result.complexity.f_avg << '\n'
      << "desired_regions=" << result.complexity.desired_regions << '\n'
      << "inpr_count=" << result.counts.inpr << '\n'
      << "pr1_count=" << result.counts.pr1 << '\n'
      << "pr2_count=" << result.counts.pr2 << '\n'
      << "fpr_count=" << result.counts.fpr << '\n'
      << "f_prime=" << result.evaluation.f_prime << '\n'
      << "q=" << result.evaluation.q << '\n';
}

json labels_sidecar(const ssrg::SegmentResult& result, const ssrg::LabImage& lab) {
  // Per-region size and mean colors, keyed by exported label.
  const auto& labels = result.segmentation.labels;
  const int n = result.segmentation.region_count;
  std::vector<long> area(n + 1, 0);
  std::vector<std::array<double, 3>> lab_sum(n + 1, {0, 0, 0});
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x) {
      const auto l = labels.at(x, y);
      ++area[l];
      lab_sum[l][0] += lab.at(x, y).l;
      lab_sum[l][1] += lab.at(x, y).a;
      lab_sum[l][2] += lab.at(x, y).b;
    }
  json regions = json::object();
  for (int l = 1; l <= n; ++l) {
    if (area[l] == 0) continue;
    const auto& e = result.evaluation.regions;
    json entry;
    entry["size"] = area[l];
    entry["mean_lab"] = {lab_sum[l][0] / area[l], lab_sum[l][1] / area[l],
                         lab_sum[l][2] / area[l]};
    if (l - 1 < static_cast<int>(e.size()))
      entry["mean_rgb"] = {e[l - 1].mean_rgb[0], e[l - 1].mean_rgb[1],
                           e[l - 1].mean_rgb[2]};
    regions[std::to_string(l)] = entry;
  }
  return {{"region_count", n}, {"regions", regions}};
}

int run_segment(const std::string& input, const std::string& config_file,
                const std::string& out_dir,
                const std::vector<std::string>& overrides, bool dump_stages) {
  ssrg::PipelineConfig config;
  if (!config_file.empty()) ssrg::load_config_file(config, config_file);
  for (const auto& s : overrides) ssrg::apply_config_assignment(config, s);
  config.validate();

  const ssrg::RgbImage image = ssrg::read_png_rgb(input);
  const ssrg::SegmentResult result = ssrg::segment(image, config);

  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ssrg::IoError("cannot create output directory: " + out_dir);

  ssrg::write_png_labels((dir / "labels.png").string(), result.segmentation.labels);
  ssrg::write_png_rgb(
      (dir / "overlay.png").string(),
      ssrg::render_boundary_overlay(image, result.segmentation.labels));

  const ssrg::LabImage lab =
      ssrg::bilateral_filter(ssrg::srgb_to_lab(image), config.bilateral);
  std::ofstream sidecar(dir / "labels.json");
  if (!sidecar) throw ssrg::IoError("cannot write labels.json");
  sidecar << labels_sidecar(result, lab).dump(2) << '\n';

  std::ofstream report(dir / "report.txt");
  if (!report) throw ssrg::IoError("cannot write report.txt");
  write_text_report(report, result);
  std::ofstream report_j(dir / "report.json");
  if (!report_j) throw ssrg::IoError("cannot write report.json");
  report_j << report_json(result).dump(2) << '\n';

  if (dump_stages) {
    ssrg::write_png_gray((dir / "cv.png").string(), result.cv);
    ssrg::write_png_gray((dir / "eg.png").string(),
                         ssrg::normalize_field(result.enhanced_gradient));
    ssrg::write_png_gray((dir / "entropy.png").string(),
                         ssrg::normalize_field(result.entropy));
    ssrg::SerGrid seed_grid = result.grid_inpr;
    ssrg::write_png_rgb((dir / "seeds.png").string(),
                        ssrg::render_seed_overlay(seed_grid, result.seeds));
    auto overlay = [&](const ssrg::SerGrid& grid, const char* name) {
      ssrg::write_png_rgb(
          (dir / name).string(),
          ssrg::render_boundary_overlay(image,
                                        ssrg::rasterize_grid_labels(grid)));
    };
    overlay(result.grid_inpr, "inpr.png");
    overlay(result.grid_pr1, "pr1.png");
    overlay(result.grid_pr2, "pr2.png");
    overlay(result.grid_fpr, "fpr.png");
  }

  write_text_report(std::cout, result);
  return kExitOk;
}

int run_evaluate(const std::string& labels_path, const std::string& original_path,
                 const std::string& json_path) {
  const ssrg::LabelMap labels = ssrg::read_png_labels(labels_path);
  const ssrg::RgbImage original = ssrg::read_png_rgb(original_path);
  ssrg::EvalReport report;
  try {
    report = ssrg::evaluate_segmentation(labels, original);
  } catch (const std::invalid_argument& e) {
    throw ssrg::InputError(e.what());
  }
  std::cout << "regions=" << report.region_count << '\n'
            << "f_prime=" << report.f_prime << '\n'
            << "q=" << report.q << '\n';
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw ssrg::IoError("cannot write " + json_path);
    out << json{{"regions", report.region_count},
                {"f_prime", report.f_prime},
                {"q", report.q}}
               .dump(2)
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic color image segmentation by SER-based seeded region "
               "growing and merging"};
  app.require_subcommand(1);

  std::string input, config_file, out_dir = "out";
  std::vector<std::string> overrides;
  bool dump_stages = false;
  auto* seg = app.add_subcommand("segment", "Segment a PNG image");
  seg->add_option("input", input, "Input PNG image")->required();
  seg->add_option("--config", config_file, "Config file (key=value lines)");
  seg->add_option("--out", out_dir, "Output directory");
  seg->add_option("--set", overrides, "Override a config value (key=value)");
  seg->add_flag("--dump-stages", dump_stages, "Write intermediate stage images");

  std::string labels_path, original_path, json_path;
  auto* ev = app.add_subcommand("evaluate", "Score a label map against the original");
  ev->add_option("labels", labels_path, "16-bit label map PNG")->required();
  ev->add_option("original", original_path, "Original PNG image")->required();
  ev->add_option("--json", json_path, "Also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (seg->parsed())
      return run_segment(input, config_file, out_dir, overrides, dump_stages);
    return run_evaluate(labels_path, original_path, json_path);
  } catch (const ssrg::NoSeedsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoSeeds;
  } catch (const ssrg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ssrg::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ssrg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
