// Command-line front end; uses only the public C interface.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hausmoment.h"

namespace {

using json = nlohmann::ordered_json;

// 0 success, 2 usage, 3 convergence, 4 domain.
int exit_code_for(hm_status s) {
  switch (s) {
    case HM_OK: return 0;
    case HM_ERR_DOMAIN:
    case HM_ERR_NOT_INTERIOR:
    case HM_ERR_BOUNDARY:
    case HM_ERR_NODE_COLLISION:
    case HM_ERR_DIMENSION: return 4;
    default: return 3;
  }
}

[[noreturn]] void fail(hm_status s) {
  std::fprintf(stderr, "error: %s\n", hm_last_error_message());
  std::exit(exit_code_for(s));
}

void check(hm_status s) {
  if (s != HM_OK) fail(s);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Output {
  std::string format = "table";
  json j = json::object();

  void set(const std::string& key, double v) { j[key] = v; }
  void set(const std::string& key, long long v) { j[key] = v; }
  void set(const std::string& key, const std::string& v) { j[key] = v; }
  void set(const std::string& key, const std::vector<double>& v) { j[key] = v; }

  void emit() const {
    if (format == "json") {
      std::printf("%s\n", j.dump(2).c_str());
      return;
    }
    const char* sep = format == "csv" ? "," : "  ";
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string val;
      if (it->is_number_float()) {
        val = fmt(it->get<double>());
      } else if (it->is_number_integer()) {
        val = std::to_string(it->get<long long>());
      } else if (it->is_array()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
          if (i) val += format == "csv" ? ";" : " ";
          val += fmt((*it)[i].get<double>());
        }
      } else {
        val = it->get<std::string>();
      }
      std::printf("%s%s%s\n", it.key().c_str(), sep, val.c_str());
    }
  }
};

// Rows with a fixed column set; table/csv print one record per line,
// json collects an array of objects.
struct Table {
  std::string format = "table";
  std::vector<std::string> cols;
  json rows = json::array();

  void add(const std::vector<json>& vals) {
    json r = json::object();
    for (std::size_t i = 0; i < cols.size(); ++i) r[cols[i]] = vals[i];
    rows.push_back(r);
  }

  void emit() const {
    if (format == "json") {
      std::printf("%s\n", rows.dump(2).c_str());
      return;
    }
    const char* sep = format == "csv" ? "," : "  ";
    std::string head;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) head += sep;
      head += cols[i];
    }
    std::printf("%s\n", head.c_str());
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) line += sep;
        const json& v = r[cols[i]];
        if (v.is_number_float()) line += fmt(v.get<double>());
        else if (v.is_number_integer()) line += std::to_string(v.get<long long>());
        else line += v.get<std::string>();
      }
      std::printf("%s\n", line.c_str());
    }
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    v.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return v;
}

int default_threads() {
  if (const char* env = std::getenv("HMOMENT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

void add_measure(Output& out, hm_measure* mu) {
  int sz = hm_measure_size(mu);
  std::vector<double> nodes(sz), weights(sz);
  check(hm_measure_get(mu, nodes.data(), weights.data()));
  out.set("nodes", nodes);
  out.set("weights", weights);
  double idx = 0.0;
  check(hm_krein_index(mu, &idx));
  out.set("index", idx);
}

double round_trip_residual(hm_measure* mu, const std::vector<double>& q) {
  int n = static_cast<int>(q.size());
  std::vector<double> back(n);
  check(hm_moments_of(mu, n, back.data()));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(back[i] - q[i]));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of the truncated moment space on [0,1]"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "Output format: table, csv, json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  int quad_order = 96;
  double mc_samples = 200000;
  unsigned long long seed = 1;

  // volume
  auto* vol = app.add_subcommand("volume", "Volume of the order-n moment body");
  int vol_n = 2;
  std::string vol_method = "closed";
  double vol_tstar = 0.5;
  vol->add_option("--n", vol_n, "Moment order n")->required();
  vol->add_option("--method", vol_method,
                  "closed | mc | cov-lower | cov-upper | canonical")
      ->check(CLI::IsMember({"closed", "mc", "cov-lower", "cov-upper",
                             "canonical"}));
  vol->add_option("--tstar", vol_tstar, "Atom location for method=canonical");
  vol->add_option("--quad-order", quad_order, "Gauss-Legendre order");
  vol->add_option("--samples", mc_samples, "Monte Carlo samples");
  vol->add_option("--seed", seed, "Monte Carlo seed");

  // classify
  auto* cls = app.add_subcommand("classify", "Classify a moment vector");
  std::string cls_q;
  double cls_eta = 1e-12;
  cls->add_option("--q", cls_q, "Comma-separated q_1..q_n")->required();
  cls->add_option("--eta", cls_eta, "Boundary tolerance");

  // canonical
  auto* can = app.add_subcommand("canonical", "Moment <-> canonical coordinates");
  std::string can_q, can_p;
  can->add_option("--q", can_q, "q_1..q_n -> canonical coordinates");
  can->add_option("--p", can_p, "p_1..p_n -> moments");

  // represent
  auto* rep = app.add_subcommand("represent", "Representing measures");
  std::string rep_q, rep_kind = "principal-lower";
  double rep_tstar = 0.5;
  rep->add_option("--q", rep_q, "Comma-separated q_1..q_n")->required();
  rep->add_option("--kind", rep_kind,
                  "principal-lower | principal-upper | canonical")
      ->check(CLI::IsMember({"principal-lower", "principal-upper", "canonical"}));
  rep->add_option("--tstar", rep_tstar, "Atom location (kind=canonical)");

  // maximal-mass
  auto* mm = app.add_subcommand("maximal-mass", "Largest representable atom");
  std::string mm_q;
  double mm_tstar = 0.5;
  mm->add_option("--q", mm_q, "Comma-separated q_1..q_n")->required();
  mm->add_option("--tstar", mm_tstar, "Atom location")->required();

  // sample
  auto* smp = app.add_subcommand("sample", "Uniform draws from the moment body");
  int smp_n = 2;
  double smp_count = 5;
  smp->add_option("--n", smp_n, "Moment order n")->required();
  smp->add_option("--count", smp_count, "Number of draws");
  smp->add_option("--seed", seed, "Seed");

  // selberg
  auto* sel = app.add_subcommand("selberg", "Selberg integrals");
  int sel_n = 1, sel_m = 1;
  double sel_a = 1.0, sel_b = 1.0, sel_g = 1.0;
  std::string sel_verify = "closed";
  bool sel_mc = false;
  sel->add_option("--n", sel_n, "Number of variables");
  sel->add_option("--alpha", sel_a, "alpha");
  sel->add_option("--beta", sel_b, "beta");
  sel->add_option("--gamma", sel_g, "gamma");
  sel->add_option("--verify", sel_verify, "closed | numeric | identities")
      ->check(CLI::IsMember({"closed", "numeric", "identities"}));
  sel->add_option("--m", sel_m, "Identity order for --verify identities");
  sel->add_flag("--mc", sel_mc, "Monte Carlo instead of quadrature");
  sel->add_option("--quad-order", quad_order, "Gauss-Legendre order");
  sel->add_option("--samples", mc_samples, "Monte Carlo samples");
  sel->add_option("--seed", seed, "Monte Carlo seed");

  // rkhs
  auto* rk = app.add_subcommand("rkhs", "Reproducing-kernel checks");
  int rk_m = 2, rk_kmax = 8;
  std::string rk_check = "reproduce";
  rk->add_option("--m", rk_m, "Kernel order parameter m")->required();
  rk->add_option("--check", rk_check,
                 "reproduce | biorthogonal | legendre-table | cd-kernel")
      ->check(CLI::IsMember({"reproduce", "biorthogonal", "legendre-table",
                             "cd-kernel"}));
  rk->add_option("--kmax", rk_kmax, "Table extent for legendre-table");
  rk->add_option("--quad-order", quad_order, "Gauss-Legendre order");

  // kernel
  auto* ker = app.add_subcommand("kernel", "Kernel point evaluation");
  int ker_m = 2;
  double ker_tstar = 0.5, ker_s = 0.5;
  bool ker_even = false;
  ker->add_option("--m", ker_m, "Kernel order parameter m")->required();
  ker->add_option("--tstar", ker_tstar, "First argument")->required();
  ker->add_option("--s", ker_s, "Second argument")->required();
  ker->add_flag("--even", ker_even, "Even-order kernel instead of odd");
  ker->add_option("--quad-order", quad_order, "Gauss-Legendre order");

  // mean-moment
  auto* mom = app.add_subcommand("mean-moment", "Flat-prior moment means");
  int mom_n = 2, mom_i = 1;
  double mom_tstar = 0.5;
  mom->add_option("--n", mom_n, "Moment order n")->required();
  mom->add_option("--index", mom_i, "Coordinate index (0 gives the volume)")
      ->required();
  mom->add_option("--tstar", mom_tstar, "Chart atom location");
  mom->add_option("--quad-order", quad_order, "Gauss-Legendre order");

  // brittleness
  auto* br = app.add_subcommand("brittleness",
                                "Monte-Carlo brittleness certificate");
  int br_n = 2, br_threads = default_threads();
  double br_dp = 0.1, br_delta = -1.0, br_samples = 20000;
  bool br_sweep = false;
  int br_sweep_points = 8;
  double br_delta_min = 1e-9, br_delta_max = 1e-4;
  br->add_option("--n", br_n, "Moment order n")->required();
  br->add_option("--delta-prime", br_dp, "Target half-gap delta'");
  br->add_option("--delta", br_delta,
                 "Data-fit radius (bound calculator only; skips the experiment)");
  br->add_option("--samples", br_samples, "Monte Carlo samples");
  br->add_option("--seed", seed, "Seed");
  br->add_option("--threads", br_threads,
                 "Worker threads (result-invariant; default HMOMENT_THREADS)");
  br->add_flag("--sweep", br_sweep, "Sweep delta over a log-spaced grid");
  br->add_option("--sweep-points", br_sweep_points, "Grid size for --sweep");
  br->add_option("--delta-min", br_delta_min, "Sweep lower end");
  br->add_option("--delta-max", br_delta_max, "Sweep upper end");

  // Let global flags (e.g. --format) appear after the subcommand name.
  for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out;
  out.format = format;
  long long samples_ll = static_cast<long long>(mc_samples);

  if (vol->parsed()) {
    double value = 0.0, se = 0.0;
    if (vol_method == "closed") {
      check(hm_volume(vol_n, &value));
    } else if (vol_method == "mc") {
      check(hm_volume_mc_membership(vol_n, samples_ll, seed, &value, &se));
    } else if (vol_method == "cov-lower" || vol_method == "cov-upper") {
      bool upper = vol_method == "cov-upper";
      int kind, m;
      if (vol_n % 2 == 1) {  // odd order: Pol / Pou charts
        kind = upper ? 1 : 0;
        m = (vol_n + 1) / 2;
      } else {  // even order: Pel / Peu charts
        kind = upper ? 3 : 2;
        m = vol_n / 2;
      }
      check(hm_volume_by_cov(kind, m, 0, quad_order, samples_ll, seed, &value,
                             &se));
    } else {
      check(hm_canonical_volume_identity(vol_n, vol_tstar, 0, quad_order,
                                         samples_ll, seed, &value, &se));
    }
    double closed = 0.0;
    check(hm_volume(vol_n, &closed));
    out.set("n", static_cast<long long>(vol_n));
    out.set("method", vol_method);
    out.set("volume", value);
    if (vol_method != "closed") {
      out.set("closed_form", closed);
      out.set("residual", std::abs(value - closed));
      if (se > 0.0) out.set("stderr", se);
    }
    out.emit();
    return 0;
  }

  if (cls->parsed()) {
    std::vector<double> q = parse_list(cls_q);
    int c = 0;
    check(hm_classify(q.data(), static_cast<int>(q.size()), cls_eta, &c));
    out.set("n", static_cast<long long>(q.size()));
    out.set("class",
            std::string(c == 0 ? "interior" : c == 1 ? "boundary" : "outside"));
    if (c == 0) {
      std::vector<double> p(q.size());
      check(hm_to_canonical(q.data(), static_cast<int>(q.size()), p.data()));
      out.set("canonical", p);
    }
    out.emit();
    return 0;
  }

  if (can->parsed()) {
    if (can_q.empty() == can_p.empty()) {
      std::fprintf(stderr, "error: give exactly one of --q or --p\n");
      return 2;
    }
    if (!can_q.empty()) {
      std::vector<double> q = parse_list(can_q);
      std::vector<double> p(q.size());
      check(hm_to_canonical(q.data(), static_cast<int>(q.size()), p.data()));
      out.set("moments", q);
      out.set("canonical", p);
    } else {
      std::vector<double> p = parse_list(can_p);
      std::vector<double> q(p.size());
      check(hm_from_canonical(p.data(), static_cast<int>(p.size()), q.data()));
      out.set("canonical", p);
      out.set("moments", q);
    }
    out.emit();
    return 0;
  }

  if (rep->parsed()) {
    std::vector<double> q = parse_list(rep_q);
    hm_measure* mu = nullptr;
    if (rep_kind == "canonical") {
      double star_weight = 0.0;
      int flavor = 0;
      check(hm_canonical_representation(q.data(), static_cast<int>(q.size()),
                                        rep_tstar, &mu, &star_weight, &flavor));
      static const char* names[] = {"principal-lower", "principal-upper",
                                    "canonical-lower", "canonical-upper"};
      out.set("tstar", rep_tstar);
      out.set("flavor", std::string(names[flavor]));
      out.set("star_weight", star_weight);
    } else {
      check(hm_principal_representation(q.data(), static_cast<int>(q.size()),
                                        rep_kind == "principal-upper" ? 1 : 0,
                                        &mu));
      out.set("kind", rep_kind);
    }
    add_measure(out, mu);
    out.set("round_trip_residual", round_trip_residual(mu, q));
    hm_measure_destroy(mu);
    out.emit();
    return 0;
  }

  if (mm->parsed()) {
    std::vector<double> q = parse_list(mm_q);
    double mass = 0.0;
    check(hm_maximal_mass(q.data(), static_cast<int>(q.size()), mm_tstar, &mass));
    out.set("tstar", mm_tstar);
    out.set("maximal_mass", mass);
    out.emit();
    return 0;
  }

  if (smp->parsed()) {
    long long count = static_cast<long long>(smp_count);
    std::vector<double> buf(static_cast<std::size_t>(count) * smp_n);
    check(hm_sample_uniform(smp_n, count, seed, buf.data()));
    if (format == "json") {
      json rows = json::array();
      for (long long i = 0; i < count; ++i)
        rows.push_back(std::vector<double>(buf.begin() + i * smp_n,
                                           buf.begin() + (i + 1) * smp_n));
      out.set("n", static_cast<long long>(smp_n));
      out.j["draws"] = rows;
      out.emit();
    } else {
      const char* sep = format == "csv" ? "," : "  ";
      for (long long i = 0; i < count; ++i) {
        std::string line;
        for (int k = 0; k < smp_n; ++k) {
          if (k) line += sep;
          line += fmt(buf[i * smp_n + k]);
        }
        std::printf("%s\n", line.c_str());
      }
    }
    return 0;
  }

  if (sel->parsed()) {
    if (sel_verify == "identities") {
      // Two weighted-integral identities at order m; the weight is the sum of
      // reciprocal variables over the alpha=3 Selberg densities.
      Table tab;
      tab.format = format;
      tab.cols = {"identity", "m", "lhs", "rhs", "residual"};
      double lhs = 0.0, se = 0.0, s1 = 0.0, s2 = 0.0;
      check(hm_selberg_numeric(sel_m, 3.0, 3.0, 2.0, 1, sel_mc ? 1 : 0,
                               quad_order, samples_ll, seed, &lhs, &se));
      check(hm_selberg_closed(sel_m, 5.0, 1.0, 2.0, &s1));
      check(hm_selberg_closed(sel_m, 3.0, 3.0, 2.0, &s2));
      double rhs = 0.5 * (s1 - s2);
      tab.add({"odd", static_cast<long long>(sel_m), lhs, rhs,
               std::abs(lhs - rhs)});
      check(hm_selberg_numeric(sel_m, 3.0, 1.0, 2.0, 1, sel_mc ? 1 : 0,
                               quad_order, samples_ll, seed, &lhs, &se));
      double tail = 1.0;  // empty product at m = 1
      if (sel_m > 1) check(hm_selberg_closed(sel_m - 1, 5.0, 3.0, 2.0, &tail));
      rhs = 0.5 * sel_m * tail;
      tab.add({"even", static_cast<long long>(sel_m), lhs, rhs,
               std::abs(lhs - rhs)});
      tab.emit();
      return 0;
    }
    double closed = 0.0;
    check(hm_selberg_closed(sel_n, sel_a, sel_b, sel_g, &closed));
    out.set("n", static_cast<long long>(sel_n));
    out.set("alpha", sel_a);
    out.set("beta", sel_b);
    out.set("gamma", sel_g);
    out.set("closed_form", closed);
    if (sel_verify == "numeric") {
      double value = 0.0, se = 0.0;
      check(hm_selberg_numeric(sel_n, sel_a, sel_b, sel_g, 0, sel_mc ? 1 : 0,
                               quad_order, samples_ll, seed, &value, &se));
      out.set("numeric", value);
      out.set("residual", std::abs(value - closed));
      if (se > 0.0) out.set("stderr", se);
    }
    out.emit();
    return 0;
  }

  if (rk->parsed()) {
    if (rk_check == "legendre-table") {
      double resid = 0.0;
      check(hm_rkhs_check_legendre(rk_kmax, &resid));
      out.set("check", rk_check);
      out.set("kmax", static_cast<long long>(rk_kmax));
      out.set("max_residual", resid);
    } else if (rk_check == "reproduce") {
      double worst = 0.0;
      for (int i = 1; i <= 9; ++i) {
        double resid = 0.0;
        check(hm_rkhs_check_reproduce(rk_m, 0.1 * i, &resid));
        worst = std::max(worst, resid);
      }
      out.set("check", rk_check);
      out.set("m", static_cast<long long>(rk_m));
      out.set("max_residual", worst);
    } else if (rk_check == "biorthogonal") {
      Table tab;
      tab.format = format;
      tab.cols = {"j", "k", "value", "expected", "residual"};
      // The identity covers j = k (mod 2) only.
      for (int j = 2; j <= 2 * rk_m - 1; ++j)
        for (int k = 2 + (j % 2 == 1); k <= 2 * rk_m - 1; k += 2) {
          double value = 0.0, expected = 0.0;
          check(hm_rkhs_biorth_pair(rk_m, j, k, quad_order, &value, &expected));
          tab.add({static_cast<long long>(j), static_cast<long long>(k), value,
                   expected, std::abs(value - expected)});
        }
      tab.emit();
      return 0;
    } else {  // cd-kernel
      double resid = 0.0;
      check(hm_rkhs_check_cd(rk_m, &resid));
      out.set("check", rk_check);
      out.set("m", static_cast<long long>(rk_m));
      out.set("max_residual", resid);
    }
    out.emit();
    return 0;
  }

  if (ker->parsed()) {
    double v = 0.0;
    if (ker_even) {
      check(hm_kernel_g_hat(ker_m, ker_tstar, ker_s, quad_order, &v));
      out.set("kernel", std::string("even"));
    } else {
      check(hm_kernel_h_hat(ker_m, ker_tstar, ker_s, quad_order, &v));
      out.set("kernel", std::string("odd"));
      double cd = 0.0;
      check(hm_cd_kernel(ker_m, ker_tstar, ker_s, &cd));
      out.set("christoffel_darboux", cd);
    }
    out.set("m", static_cast<long long>(ker_m));
    out.set("tstar", ker_tstar);
    out.set("s", ker_s);
    out.set("value", v);
    out.emit();
    return 0;
  }

  if (mom->parsed()) {
    double v = 0.0;
    check(hm_mean_moment(mom_n, mom_i, mom_tstar, quad_order, &v));
    double volume = 0.0;
    check(hm_volume(mom_n, &volume));
    out.set("n", static_cast<long long>(mom_n));
    out.set("index", static_cast<long long>(mom_i));
    out.set("integral", v);
    out.set("mean", v / volume);
    out.emit();
    return 0;
  }

  if (br->parsed()) {
    if (br_delta >= 0.0 && !br_sweep) {
      // Pure bound calculator at an explicit radius.
      double bound = 0.0;
      check(hm_bound_closed_form(br_n, br_delta, &bound));
      out.set("n", static_cast<long long>(br_n));
      out.set("delta", br_delta);
      out.set("bound", bound);
      out.emit();
      return 0;
    }
    if (br_sweep) {
      Table tab;
      tab.format = format;
      tab.cols = {"delta", "bound", "estimate", "stderr"};
      for (int i = 0; i < br_sweep_points; ++i) {
        double f = br_sweep_points == 1
                       ? 0.0
                       : static_cast<double>(i) / (br_sweep_points - 1);
        double delta = br_delta_min *
                       std::pow(br_delta_max / br_delta_min, f);
        double bound = 0.0;
        check(hm_bound_closed_form(br_n, delta, &bound));
        double estimate = 0.0, se = 0.0;
        if (bound > 0.0) {
          // Invert: a radius delta targets half-gap (1 - bound)/2.
          hm_brittleness_report r{};
          check(hm_brittleness_certificate(br_n, 0.5 * (1.0 - bound),
                                           static_cast<long long>(br_samples),
                                           seed, br_threads, &r));
          estimate = r.estimate;
          se = r.stderr_est;
        }
        tab.add({delta, bound, estimate, se});
      }
      tab.emit();
      return 0;
    }
    hm_brittleness_report r{};
    check(hm_brittleness_certificate(br_n, br_dp,
                                     static_cast<long long>(br_samples), seed,
                                     br_threads, &r));
    out.set("n", static_cast<long long>(br_n));
    out.set("delta_prime", br_dp);
    out.set("delta", r.delta);
    out.set("bound", r.bound);
    out.set("estimate", r.estimate);
    out.set("stderr", r.stderr_est);
    out.set("prior_value", r.prior_estimate);
    out.set("prior_stderr", r.prior_stderr);
    out.set("rate_mass_sup", r.rate_mass_sup);
    out.set("rate_mass_inf", r.rate_mass_inf);
    out.set("rate_first_moment", r.rate_first_moment);
    out.set("samples", r.samples);
    out.set("failures", r.failures);
    out.set("conclusion", std::string(r.certified ? "LowerBoundCertified"
                                                  : "Inconclusive"));
    out.emit();
    return 0;
  }

  return 2;
}
