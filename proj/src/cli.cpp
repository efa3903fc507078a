#include <CLI11.hpp>
#include <iostream>

#include "eqdeg/burnside.hpp"
#include "eqdeg/degree.hpp"
#include "eqdeg/errors.hpp"
#include "eqdeg/pipeline.hpp"
#include "eqdeg/version.hpp"

namespace eqdeg {

namespace {

GroupPtr group_from_spec(const std::string& spec) {
  return FiniteGroup::build(GroupDescriptor::parse(spec));
}

int cmd_analyze(const std::string& config_path, const std::string& format_override,
                bool audit, const std::string& cache_dir, bool gap_compat) {
  AnalysisConfig cfg = AnalysisConfig::load_file(config_path);
  if (!format_override.empty()) cfg.output.format = format_override;
  // accepted aliases for the structured format
  if (cfg.output.format == "json-like" || cfg.output.format == "json")
    cfg.output.format = "machine";
  if (audit) cfg.output.audit = true;
  if (!cache_dir.empty()) cfg.output.cache_dir = cache_dir;
  if (gap_compat) cfg.output.gap_compat = true;
  if (cfg.output.format != "text" && cfg.output.format != "machine")
    throw ConfigError("--format must be text, machine or json-like");
  AnalysisResult res = run_analysis(cfg);
  std::cout << (cfg.output.format == "machine" ? res.machine_report : res.text_report);
  return res.exit_code;
}

int cmd_ccs(const std::string& spec, bool gap_compat, const std::string& cache_dir,
            int bound) {
  GroupPtr g = group_from_spec(spec);
  CcsPtr table = load_or_build_ccs(g, cache_dir, bound);
  std::cout << "group " << g->descriptor().to_string() << "  order " << g->order() << "\n";
  std::cout << "classes: " << table->class_count() << "\n";
  for (int i = 0; i < table->class_count(); ++i) {
    const auto& c = table->cls(i);
    std::cout << "  [" << i << "] (" << (gap_compat ? c.gap_name : c.name) << ")  |H|="
              << c.representative.order() << "  |W(H)|=" << c.weyl_order
              << "  class size=" << c.member_subgroups.size() << "\n";
  }
  return 0;
}

int cmd_marks(const std::string& spec, int bound) {
  GroupPtr g = group_from_spec(spec);
  CcsPtr table = ccs(g, bound);
  TableOfMarks marks(*table);
  std::cout << "group " << g->descriptor().to_string() << "  order " << g->order() << "\n";
  std::cout << "marks[K][H] = |(G/H)^K|, classes ordered as in `ccs`\n";
  for (int k = 0; k < table->class_count(); ++k) {
    std::cout << "  (" << table->cls(k).name << "):";
    for (int h = 0; h < table->class_count(); ++h) std::cout << " " << marks.mark(k, h);
    std::cout << "\n";
  }
  return 0;
}

int cmd_basic_degrees(const std::string& spec, int gamma_points, bool all, bool gap_compat,
                      const std::string& cache_dir, int bound) {
  GroupDescriptor d = GroupDescriptor::parse(spec);
  GroupPtr gamma = FiniteGroup::build(d);
  if (d.kind == GroupDescriptor::Kind::dihedral && gamma_points > 0 &&
      gamma_points != d.n)
    throw ConfigError("--gamma-points must equal n for dihedral:n");
  GroupPtr klein = FiniteGroup::product(FiniteGroup::dihedral(1), FiniteGroup::cyclic(2));
  GroupPtr g = FiniteGroup::product(klein, gamma);
  CcsPtr table = load_or_build_ccs(g, cache_dir, bound);
  std::cout << "group " << g->descriptor().to_string() << "  order " << g->order() << "\n";
  auto decomp = isotypic_decomposition(gamma);
  auto pairs = signed_irreps(decomp, g);
  for (const auto& p : pairs) {
    std::cout << "  deg_{" << p.plus.name
              << "} = " << basic_degree(p.plus, *table).to_text(gap_compat) << "\n";
    std::cout << "  deg_{" << p.minus.name
              << "} = " << basic_degree(p.minus, *table).to_text(gap_compat) << "\n";
  }
  if (all) {
    std::cout << "all irreducibles:\n";
    for (const auto& rep : irreps_of(g))
      std::cout << "  deg_{" << rep.name
                << "} = " << basic_degree(rep, *table).to_text(gap_compat) << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"exact equivariant degree computations for symmetric delay systems"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "run the full analysis from a config file");
  std::string config_path, format, cache_dir, group_spec;
  bool audit = false, gap_compat = false, all = false;
  int gamma_points = 0, bound = 200;
  analyze->add_option("--config", config_path, "config file (JSON)")->required();
  analyze->add_option("--format", format, "text | machine");
  analyze->add_flag("--audit", audit, "emit the audit block");
  analyze->add_option("--cache-dir", cache_dir, "CCS cache directory");
  analyze->add_flag("--gap-compat", gap_compat, "render class names in GAP-style abbreviations");

  auto* ccs_cmd = app.add_subcommand("ccs", "conjugacy classes of subgroups");
  ccs_cmd->add_option("--group", group_spec, "group spec, e.g. dihedral:3 or product(D1,Z2,D3)")
      ->required();
  ccs_cmd->add_flag("--gap-compat", gap_compat, "GAP-style class names");
  ccs_cmd->add_option("--cache-dir", cache_dir, "CCS cache directory");
  ccs_cmd->add_option("--group-bound", bound, "subgroup enumeration order bound");

  auto* marks_cmd = app.add_subcommand("marks", "table of marks");
  marks_cmd->add_option("--group", group_spec, "group spec")->required();
  marks_cmd->add_option("--group-bound", bound, "subgroup enumeration order bound");

  auto* bd_cmd = app.add_subcommand("basic-degrees", "basic degrees over (D1 x Z2) x Gamma");
  bd_cmd->add_option("--group", group_spec, "Gamma spec, e.g. dihedral:3 or trivial")
      ->required();
  bd_cmd->add_option("--gamma-points", gamma_points, "permutation degree of Gamma");
  bd_cmd->add_flag("--all", all, "also list every irreducible of G");
  bd_cmd->add_flag("--gap-compat", gap_compat, "GAP-style class names");
  bd_cmd->add_option("--cache-dir", cache_dir, "CCS cache directory");
  bd_cmd->add_option("--group-bound", bound, "subgroup enumeration order bound");

  auto* version_cmd = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(config_path, format, audit, cache_dir, gap_compat);
    if (app.got_subcommand(ccs_cmd)) return cmd_ccs(group_spec, gap_compat, cache_dir, bound);
    if (app.got_subcommand(marks_cmd)) return cmd_marks(group_spec, bound);
    if (app.got_subcommand(bd_cmd))
      return cmd_basic_degrees(group_spec, gamma_points, all, gap_compat, cache_dir, bound);
    if (app.got_subcommand(version_cmd)) {
      std::cout << "eqdeg " << kVersion << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const DelayRangeViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const DelaySymmetryViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const EvenN& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const MuPairingViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedGroup& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const GroupTooLarge& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const NonCommuting& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const ComplexSpectrum& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace eqdeg
