#include "elastomap/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "elastomap/error.hpp"
#include "elastomap/fem_solver.hpp"
#include "elastomap/field_io.hpp"
#include "elastomap/oracles.hpp"
#include "elastomap/spectral_solver.hpp"

namespace elastomap {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class F>
auto in_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(stage) + ": " + e.detail());
  }
}

ReferenceMedium reference(const RunConfig& cfg) { return {cfg.dimension, cfg.kappa0, cfg.mu0}; }

Metadata base_meta(const RunConfig& cfg, const std::string& kind) {
  Metadata m;
  m.set("kind", kind);
  m.set("seed", std::to_string(cfg.seed));
  m.set("c", fmt(cfg.contrast));
  m.set("kappa0", fmt(cfg.kappa0));
  m.set("mu0", fmt(cfg.mu0));
  m.set("reference", cfg.reference_given ? "config" : "nominal default");
  return m;
}

fs::path strain_path(const RunConfig& cfg, int n) {
  return cfg.output / ("strain_" + std::to_string(n) + ".smf");
}

std::string shear_tag(int dim) {
  std::string tag;
  for (int i = 2; i <= 1 + projector_dims(dim).n_K; ++i) tag += std::to_string(i);
  return tag;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

bool file_exists(const fs::path& p) {
  std::error_code ec;
  return fs::exists(p, ec);
}

void write_maps_pgm(const ScalarField& ref_map, const ScalarField& rec, const fs::path& ref_pgm,
                    const fs::path& rec_pgm, Manifest& out) {
  const PgmRange shared{std::min(ref_map.min(), rec.min()) - 1e-12,
                        std::max(ref_map.max(), rec.max()) + 1e-12};
  write_pgm(ref_map, ref_pgm, shared);
  write_pgm(rec, rec_pgm, shared);
  out.files.push_back(ref_pgm);
  out.files.push_back(rec_pgm);
}

ValidationLine check(std::string name, double got, double want, double tol) {
  const double err = std::abs(got - want);
  std::ostringstream d;
  d << "got " << fmt(got) << ", expected " << fmt(want) << ", |diff| " << fmt(err) << " <= "
    << fmt(tol);
  return {std::move(name), err <= tol, d.str()};
}

}  // namespace

Grid make_grid(const RunConfig& cfg) {
  return cfg.solver == SolverKind::Fem ? Grid::bounded(cfg.grid) : Grid::periodic(cfg.grid);
}

ModulusMaps generate_maps(const RunConfig& cfg) {
  const Grid grid = make_grid(cfg);
  const Moduli nominal{cfg.kappa0, cfg.mu0};
  switch (cfg.generator) {
    case GeneratorKind::Voronoi:
      return gen_voronoi(grid, cfg.n_cells, cfg.contrast, cfg.seed, cfg.wrap, nominal);
    case GeneratorKind::Smooth: {
      std::vector<double> corr = cfg.corr_lengths;
      if (corr.empty()) {
        corr = {0.2, 0.05};
        if (cfg.dimension == 3) corr.push_back(0.05);
      }
      return gen_smooth_aniso(grid, cfg.contrast, cfg.seed, corr, nominal);
    }
    case GeneratorKind::Inclusion:
      return gen_inclusion(grid, cfg.inclusion_radius, {0.5, 0.5, 0.5}, nominal,
                           {cfg.inclusion_kappa, cfg.inclusion_mu});
    case GeneratorKind::Homogeneous:
      return gen_homogeneous(grid, nominal);
  }
  throw Error(ErrorCode::ConfigError, "unknown generator");
}

std::vector<NumberedLoad> requested_loads(const RunConfig& cfg) {
  std::vector<NumberedLoad> out;
  if (cfg.loads != LoadSet::Shear) {
    out.push_back({1, Projector::J, make_load_basis(Projector::J, cfg.dimension).strains[0]});
  }
  if (cfg.loads != LoadSet::Bulk) {
    const auto basis = make_load_basis(Projector::K, cfg.dimension);
    for (std::size_t i = 0; i < basis.strains.size(); ++i) {
      out.push_back({static_cast<int>(i) + 2, Projector::K, basis.strains[i]});
    }
  }
  return out;
}

Manifest stage_generate(const RunConfig& cfg) {
  return in_stage("generate", [&] {
    ensure_dir(cfg.output);
    const ModulusMaps maps = generate_maps(cfg);
    Manifest out;
    const auto kp = cfg.output / "kappa_ref.smf";
    const auto mp = cfg.output / "mu_ref.smf";
    write_field(kp, make_field_file(maps.kappa, base_meta(cfg, "kappa_ref")));
    write_field(mp, make_field_file(maps.mu, base_meta(cfg, "mu_ref")));
    out.files = {kp, mp};
    return out;
  });
}

Manifest stage_solve(const RunConfig& cfg) {
  return in_stage("solve", [&] {
    const ScalarField kappa = read_field(cfg.output / "kappa_ref.smf").scalar();
    const ScalarField mu = read_field(cfg.output / "mu_ref.smf").scalar();
    Manifest out;
    for (const auto& load : requested_loads(cfg)) {
      Metadata meta = base_meta(cfg, "strain");
      meta.set("load", std::to_string(load.number));
      std::string comps;
      for (int c = 0; c < load.eps_bar.comps().size(); ++c) {
        comps += (c ? "," : "") + fmt(load.eps_bar[c]);
      }
      meta.set("eps_bar", comps);
      TensorField eps;
      if (cfg.solver == SolverKind::Spectral) {
        auto [field, report] =
            solve_ls(kappa, mu, load.eps_bar, mean_reference(kappa, mu), cfg.tol, cfg.max_iter);
        meta.set("solver", "spectral");
        meta.set("iterations", std::to_string(report.iterations));
        meta.set("residual",
                 fmt(report.residual_history.empty() ? 0.0 : report.residual_history.back()));
        meta.set("equilibrium", fmt(report.equilibrium_residual));
        eps = std::move(field);
      } else {
        auto sol = solve_dirichlet(kappa, mu, load.eps_bar, cfg.tol);
        meta.set("solver", "fem");
        meta.set("iterations", std::to_string(sol.iterations));
        meta.set("residual", fmt(sol.residual));
        eps = std::move(sol.strain);
      }
      const auto path = strain_path(cfg, load.number);
      write_field(path, make_field_file(eps, meta));
      out.files.push_back(path);
    }
    return out;
  });
}

Manifest stage_reconstruct(const RunConfig& cfg) {
  return in_stage("reconstruct", [&] {
    const int d = cfg.dimension;
    const ReferenceMedium ref = reference(cfg);
    const ScalarField kref = read_field(cfg.output / "kappa_ref.smf").scalar();
    const ScalarField mref = read_field(cfg.output / "mu_ref.smf").scalar();
    const double norm = cfg.contrast > 0.0 ? cfg.contrast : 1.0;
    const bool fem = cfg.solver == SolverKind::Fem;
    const Anchoring anchoring = cfg.anchoring_mean ? Anchoring::Mean : Anchoring::None;
    const bool images = cfg.pgm && d == 2;
    Manifest out;

    auto emit = [&](const ReconResult& r, const ScalarField& truth, const std::string& name,
                    const std::string& ref_name) {
      Metadata meta = base_meta(cfg, name);
      meta.set("method", std::string(to_string(r.method)));
      if (!r.note.empty()) meta.set("note", r.note);
      const auto path = cfg.output / (name + ".smf");
      write_field(path, make_field_file(r.modulus_map, meta));
      const ScalarField err = error_map(truth, r.modulus_map, norm);
      const auto epath = cfg.output / ("err_" + name + ".smf");
      write_field(epath, make_field_file(err, base_meta(cfg, "err_" + name)));
      out.files.push_back(path);
      out.files.push_back(epath);
      if (images) {
        write_maps_pgm(truth, r.modulus_map, cfg.output / (ref_name + ".pgm"),
                       cfg.output / (name + ".pgm"), out);
        const auto epgm = cfg.output / ("err_" + name + ".pgm");
        write_pgm(err, epgm);
        out.files.push_back(epgm);
      }
    };

    if (cfg.loads != LoadSet::Shear) {
      ExperimentSet exp{make_load_basis(Projector::J, d), {}, ref};
      exp.strain_fields.push_back(read_field(strain_path(cfg, 1)).tensor());
      const ReconResult r = fem ? reconstruct_bounded(exp, anchoring) : reconstruct_bulk(exp);
      emit(r, kref, "kappa_1", "kappa_ref");
    }
    if (cfg.loads != LoadSet::Bulk) {
      ExperimentSet exp{make_load_basis(Projector::K, d), {}, ref};
      for (std::size_t i = 0; i < exp.basis.strains.size(); ++i) {
        exp.strain_fields.push_back(read_field(strain_path(cfg, static_cast<int>(i) + 2)).tensor());
      }
      const ReconResult r = fem ? reconstruct_bounded(exp, anchoring) : reconstruct_shear(exp);
      emit(r, mref, "mu_" + shear_tag(d), "mu_ref");
      if (cfg.diagnostics) {
        ReconResult single = reconstruct_shear_single(exp, 0);
        if (fem && anchoring == Anchoring::Mean) {
          const double shift = ref.mu0 - single.modulus_map.mean();
          for (double& v : single.modulus_map.values()) v += shift;
        }
        emit(single, mref, "mu_2", "mu_ref");
      }
    }
    return out;
  });
}

std::string build_report(const RunConfig& cfg) {
  const int d = cfg.dimension;
  std::ostringstream o;
  o << "# elastomap reconstruction report\n";
  o << "solver = " << (cfg.solver == SolverKind::Spectral ? "spectral" : "fem") << '\n';
  o << "grid = ";
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) o << (i ? "x" : "") << cfg.grid[i];
  o << '\n';
  o << "contrast = " << fmt(cfg.contrast) << '\n';
  o << "seed = " << cfg.seed << '\n';
  o << "reference = kappa0 " << fmt(cfg.kappa0) << ", mu0 " << fmt(cfg.mu0) << " ("
    << (cfg.reference_given ? "config" : "nominal default") << ")\n";
  if (cfg.contrast == 0.0) o << "errors normalized by 1 (zero contrast)\n";
  o << '\n';
  for (const auto& load : requested_loads(cfg)) {
    const auto p = strain_path(cfg, load.number);
    if (!file_exists(p)) continue;
    const FieldFile f = read_field(p);
    o << "strain_" << load.number << " iterations = " << f.meta.get("iterations").value_or("?")
      << ", residual = " << f.meta.get("residual").value_or("?");
    if (auto eq = f.meta.get("equilibrium")) o << ", equilibrium = " << *eq;
    o << '\n';
  }
  o << '\n';
  const std::vector<std::string> maps = {"kappa_1", "mu_" + shear_tag(d), "mu_2"};
  for (const auto& name : maps) {
    const auto p = cfg.output / ("err_" + name + ".smf");
    if (!file_exists(p)) continue;
    const ErrorStats s = error_stats(read_field(p).scalar());
    o << name << ": sup = " << fmt(s.sup) << ", median = " << fmt(s.median)
      << ", interior sup = " << fmt(s.interior_sup)
      << ", interior median = " << fmt(s.interior_median) << ", band sup = " << fmt(s.band_sup)
      << ", band median = " << fmt(s.band_median) << '\n';
  }
  return o.str();
}

Manifest stage_report(const RunConfig& cfg) {
  return in_stage("report", [&] {
    const auto path = cfg.output / "report.txt";
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << build_report(cfg);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
    return Manifest{{path}};
  });
}

Manifest run_pipeline(const RunConfig& cfg) {
  Manifest all;
  for (auto stage : {stage_generate, stage_solve, stage_reconstruct, stage_report}) {
    const Manifest m = stage(cfg);
    all.files.insert(all.files.end(), m.files.begin(), m.files.end());
  }
  return all;
}

std::vector<ValidationLine> stage_validate() {
  std::vector<ValidationLine> out;
  const ReferenceMedium r2{2, 1.0, 1.0};
  const ReferenceMedium r3{3, 1.0, 1.0};

  out.push_back(check("green 1/lambda_J d=2", inverse_lambda_J(r2), 4.0, 1e-13));
  out.push_back(check("green 1/lambda_K d=2", inverse_lambda_K(r2), 4.0 / 3.0, 1e-13));
  out.push_back(check("green lambda_J d=3", green_coeffs(r3).lambdaJ, 1.0 / 7.0, 1e-13));

  const SymTensor2 i3 = SymTensor2::identity(3);
  const SymTensor2 in = eshelby_interior(r3, {1.1, 1.0}, i3);
  out.push_back(check("inclusion interior strain d=3", in[0], 1.0 - 0.1 / (1.1 + 4.0 / 3.0),
                      1e-13));
  const double krec = eshelby_first_order_check(in, i3, r3).value;
  out.push_back(check("inclusion first-order bulk d=3", krec, 1.1, 5e-3));

  const auto [k1, k2] = hs_phase_moduli(1.0, 0.01, 0.5);
  const HSPhases p{0.5, k1, k2, 1.0, 1.0, 3};
  const HSResult m = hs_second_moments(p, i3);
  out.push_back(check("two-phase bulk recovery d=3", hs_recover_moduli(m, i3, r3).value, k1,
                      1e-4));

  // First-order inversion is exact on first-order strains.
  const Grid g = Grid::periodic({16, 16});
  const ModulusMaps maps = gen_smooth_aniso(g, 1e-2, 7);
  const ReferenceMedium ref = mean_reference(maps.kappa, maps.mu);
  ExperimentSet exp{make_load_basis(Projector::J, 2), {}, ref};
  exp.strain_fields.push_back(first_order_strain(maps.kappa, maps.mu, exp.basis.strains[0], ref));
  const ScalarField rec = reconstruct_bulk(exp).modulus_map;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(rec[i] - maps.kappa[i]));
  }
  out.push_back(check("first-order bulk inversion 16x16", worst, 0.0, 1e-12));
  return out;
}

}  // namespace elastomap
