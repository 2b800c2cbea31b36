#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "timedata/timedata.hpp"

namespace timedata::cli {
namespace {

std::string num(double v, const char* fmt = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void row(std::ostream& out, std::string_view label, const std::string& value) {
  out << std::left << std::setw(20) << label << value << '\n';
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw CLI::ValidationError(what, "'" + text + "' is not a number");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

geom::Point2 parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw CLI::ValidationError("point", "expected x,y but got '" + text + "'");
  return {parse_double(parts[0], "point"), parse_double(parts[1], "point")};
}

/// "a/b,c/d,..." pairs.
std::vector<mem::PhasePair> parse_phases(const std::string& text) {
  std::vector<mem::PhasePair> out;
  for (const auto& item : split(text, ',')) {
    const auto ab = split(item, '/');
    if (ab.size() != 2) throw CLI::ValidationError("phases", "expected WR/RD pairs, got '" + item + "'");
    out.push_back({parse_double(ab[0], "phases"), parse_double(ab[1], "phases")});
  }
  return out;
}

ptvda::KeyPattern parse_pattern(const std::string& name) {
  if (name == "uniform") return ptvda::KeyPattern::Uniform;
  if (name == "sorted") return ptvda::KeyPattern::Sorted;
  return ptvda::KeyPattern::Identical;
}

ptvda::Extent parse_extent(const std::string& text) {
  if (text == "inf") return ptvda::Extent::infinite();
  const double v = parse_double(text, "extent");
  if (v < 1.0 || v != std::floor(v)) throw CLI::ValidationError("extent", "expected an integer >= 1 or 'inf'");
  return ptvda::Extent::finite(static_cast<std::uint64_t>(v));
}

const char* ratio_name(ptvda::RatioClass c) {
  switch (c) {
    case ptvda::RatioClass::Unit: return "unit";
    case ptvda::RatioClass::Vanishing: return "vanishing";
    case ptvda::RatioClass::Diverging: return "diverging";
  }
  return "?";
}

using Action = std::function<void(std::ostream&)>;

/// Registers a leaf command whose action runs after parsing succeeds.
CLI::App* leaf(CLI::App& parent, const std::string& name, const std::string& help, Action& slot,
               Action action) {
  auto* cmd = parent.add_subcommand(name, help);
  cmd->callback([&slot, action = std::move(action)] { slot = action; });
  return cmd;
}

struct State {
  std::map<std::string, double> d;
  std::map<std::string, std::string> s;
  std::map<std::string, std::size_t> n;
};

void add_link(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("link", "light-time link model");
  grp->require_subcommand(1);

  auto* eps = leaf(*grp, "eps", "distance covered at a progress level", act, [&st](std::ostream& out) {
    const auto e = link::epsilon_from_progress(percent(st.d["progress"]), light_minutes(st.d["range"]));
    out << num(e.value(), "%.6f") << " Lm\n";
  });
  eps->add_option("--progress", st.d["progress"], "progress in percent")->required();
  eps->add_option("--range", st.d["range"], "range in light-minutes")->required();

  auto* shift = leaf(*grp, "shift", "timestamp of light now arriving", act, [&st](std::ostream& out) {
    const auto t = link::shift_timestamp(link::Timestamp::parse(st.s["time"]), light_minutes(st.d["epsilon"]));
    out << t.str() << '\n';
  });
  shift->add_option("--time", st.s["time"], "local time HH:MM:SS")->required();
  shift->add_option("--epsilon", st.d["epsilon"], "epsilon in light-minutes")->required();

  auto* freq = leaf(*grp, "freq", "frequency resolution", act, [&st](std::ostream& out) {
    const auto nu = link::frequency_resolution(kilometers(st.d["distance"]), percent(st.d["progress"]));
    if (const auto* q = std::get_if<Quantity>(&nu)) {
      out << num(q->value()) << " Hz\n";
    } else {
      out << analysis::div0_sentinel << '\n';
    }
  });
  freq->add_option("--distance", st.d["distance"], "distance in km")->required();
  freq->add_option("--progress", st.d["progress"], "progress in percent")->required();

  auto* disp = leaf(*grp, "displaced", "displaced frequency resolution", act, [&st](std::ostream& out) {
    const auto nu =
        link::displaced_frequency_resolution(kilometers(st.d["distance"]), percent(st.d["progress"]));
    if (const auto* q = std::get_if<Quantity>(&nu)) {
      out << num(q->value()) << " Hz\n";
    } else {
      out << "divergent\n";
    }
  });
  disp->add_option("--distance", st.d["distance"], "distance in km")->required();
  disp->add_option("--progress", st.d["progress"], "progress in percent")->required();

  auto* unc = leaf(*grp, "uncertainty", "check dw dt >= 2 pi", act, [&st](std::ostream& out) {
    const bool ok = link::uncertainty_satisfied(hertz(st.d["dw"]), seconds(st.d["dt"]));
    row(out, "product", num(st.d["dw"] * st.d["dt"]));
    row(out, "verdict", ok ? "satisfied" : "violated");
  });
  unc->add_option("--delta-omega", st.d["dw"], "bandwidth")->required();
  unc->add_option("--delta-t", st.d["dt"], "duration in seconds")->required();

  auto* prob = leaf(*grp, "prob", "time-data jump probability", act, [&st](std::ostream& out) {
    const link::AmplitudeOverlap o{st.d["re"], st.d["im"]};
    const auto parts = link::timedata_decomposition(st.d["t"], st.d["delta"], o);
    row(out, "probability", num(link::timedata_probability(st.d["t"], st.d["delta"], o)));
    row(out, "prob(time)", num(parts.time));
    row(out, "prob(data)", num(parts.data));
  });
  prob->add_option("--t", st.d["t"], "time in seconds")->required();
  prob->add_option("--delta", st.d["delta"], "data in bits")->required();
  prob->add_option("--re", st.d["re"], "Re <psi|phi>")->required();
  prob->add_option("--im", st.d["im"], "Im <psi|phi>")->default_val(0.0);
}

void add_optics(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("optics", "fiber and Faraday calculations");
  grp->require_subcommand(1);

  auto* vn = leaf(*grp, "vnumber", "fiber V-number", act, [&st](std::ostream& out) {
    const auto f = optics::FiberSpec::make(st.d["a"], st.d["lambda"], st.d["n1"], st.d["n2"]);
    const double v = optics::v_number(f);
    row(out, "V", num(v));
    row(out, "mode", optics::is_single_mode(v) ? "single" : "multi");
  });
  vn->add_option("--radius", st.d["a"], "core radius in m")->required();
  vn->add_option("--wavelength", st.d["lambda"], "wavelength in m")->required();
  vn->add_option("--n1", st.d["n1"], "core index")->required();
  vn->add_option("--n2", st.d["n2"], "cladding index")->required();

  auto* sn = leaf(*grp, "snell", "refracted angle", act, [&st](std::ostream& out) {
    const auto r = optics::snell_refracted_angle(st.d["theta"], st.d["n1"], st.d["n2"]);
    if (const auto* a = std::get_if<double>(&r)) {
      out << num(*a) << " rad\n";
    } else {
      out << "total internal reflection\n";
    }
  });
  sn->add_option("--theta", st.d["theta"], "incidence angle in rad")->required();
  sn->add_option("--n1", st.d["n1"], "incident index")->required();
  sn->add_option("--n2", st.d["n2"], "refracting index")->required();

  auto* fa = leaf(*grp, "faraday", "Faraday rotation angle", act, [&st](std::ostream& out) {
    out << num(optics::faraday_rotation(optics::FaradayCell::make(st.d["verdet"], st.d["b"], st.d["path"])))
        << " rad\n";
  });
  fa->add_option("--verdet", st.d["verdet"], "Verdet constant rad/(T m)")->required();
  fa->add_option("--field", st.d["b"], "B field in T")->required();
  fa->add_option("--path", st.d["path"], "path length in m")->required();

  auto* sh = leaf(*grp, "shell", "isolation shell area and volume", act, [&st](std::ostream& out) {
    const auto g = optics::isolation_geometry(
        optics::IsolationShell::make(st.d["b"], st.d["len"], st.d["r"], st.d["rc"]));
    row(out, "area_m2", num(g.area_m2));
    row(out, "volume_m3", num(g.volume_m3));
  });
  sh->add_option("--thickness", st.d["b"], "shell thickness in m")->required();
  sh->add_option("--length", st.d["len"], "length in m")->required();
  sh->add_option("--mean-radius", st.d["r"], "mean radius in m")->required();
  sh->add_option("--circular-radius", st.d["rc"], "enclosed radius in m")->required();

  auto* ve = leaf(*grp, "verdict", "field isolation verdict", act, [&st](std::ostream& out) {
    const auto v = optics::isolation_verdict(st.d["residual"], st.d["tol"]);
    out << (v == optics::IsolationVerdict::Isolated ? "isolated" : "not isolated") << '\n';
  });
  ve->add_option("--residual", st.d["residual"], "residual field in T")->required();
  ve->add_option("--tolerance", st.d["tol"], "tolerance in T")->required();
}

void add_mem(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("mem", "memory timing and electrical model");
  grp->require_subcommand(1);

  auto* bf = leaf(*grp, "bitfreq", "bit frequency a / (b t)", act, [&st](std::ostream& out) {
    out << num(mem::bit_frequency(st.d["a"], st.d["b"], st.d["t"])) << " Hz\n";
  });
  bf->add_option("--a", st.d["a"], "classical bits in")->required();
  bf->add_option("--b", st.d["b"], "qubit units in")->required();
  bf->add_option("--t", st.d["t"], "time in s")->required();

  auto* pooled = leaf(*grp, "pooled", "pooled bit frequency", act, [&st](std::ostream& out) {
    std::vector<mem::BitTerm> terms;
    for (const auto& item : split(st.s["terms"], ',')) {
      const auto ij = split(item, ':');
      if (ij.size() != 2) throw CLI::ValidationError("--terms", "expected i:j pairs");
      terms.push_back({parse_double(ij[0], "--terms"), parse_double(ij[1], "--terms")});
    }
    const auto r = mem::pooled_bit_frequency(terms, st.d["t"]);
    row(out, "nu_bit", num(r.hz) + " Hz");
    row(out, "minimum", num(r.minimum_hz) + " Hz");
    row(out, "meets minimum", r.meets_minimum ? "yes" : "no");
  });
  pooled->add_option("--terms", st.s["terms"], "comma list of i:j")->required();
  pooled->add_option("--t", st.d["t"], "time in s")->required();

  auto* qb = leaf(*grp, "qubit", "qubit norm check", act, [&st](std::ostream& out) {
    const mem::QubitState q{{st.d["ar"], st.d["ai"]}, {st.d["br"], st.d["bi"]}};
    out << (mem::validate_qubit(q) ? "valid" : "invalid") << '\n';
  });
  qb->add_option("--a-re", st.d["ar"])->required();
  qb->add_option("--a-im", st.d["ai"])->default_val(0.0);
  qb->add_option("--b-re", st.d["br"])->required();
  qb->add_option("--b-im", st.d["bi"])->default_val(0.0);

  auto* ph = leaf(*grp, "phases", "mean WR/RD phase ratio per pole", act, [&st](std::ostream& out) {
    const mem::PolePhases phases{parse_phases(st.s["alpha"]), parse_phases(st.s["beta"]),
                                 parse_phases(st.s["delta"])};
    const auto m = mem::phase_ratio_mean(phases);
    row(out, "alpha", num(m.alpha));
    row(out, "beta", num(m.beta));
    row(out, "delta", num(m.delta));
    row(out, "poles agree", mem::pole_means_agree(m, st.d["tol"]) ? "yes" : "no");
  });
  ph->add_option("--alpha", st.s["alpha"], "WR/RD pairs, n >= 4")->required();
  ph->add_option("--beta", st.s["beta"], "WR/RD pairs, n >= 4")->required();
  ph->add_option("--delta", st.s["delta"], "exactly 2 WR/RD pairs")->required();
  ph->add_option("--tolerance", st.d["tol"])->default_val(1e-9);

  auto* rs = leaf(*grp, "resistance", "sheet and electrode resistance", act, [&st](std::ostream& out) {
    const auto g = mem::ElectrodeGeometry::make(st.d["l"], st.d["w"], st.d["rho"], st.d["th"]);
    row(out, "sheet_ohm_sq", num(mem::sheet_resistance(g)));
    row(out, "resistance_ohm", num(mem::resistance(g)));
  });
  rs->add_option("--length", st.d["l"])->required();
  rs->add_option("--width", st.d["w"])->required();
  rs->add_option("--rho", st.d["rho"], "resistivity in ohm m")->required();
  rs->add_option("--thickness", st.d["th"], "film thickness in m")->required();

  auto* gm = leaf(*grp, "gm", "baseline transconductance", act, [&st](std::ostream& out) {
    out << num(mem::transconductance_baseline(st.d["di"], st.d["dv"])) << " S\n";
  });
  gm->add_option("--di", st.d["di"], "delta I_ds in A")->required();
  gm->add_option("--dv", st.d["dv"], "delta V_gs in V")->required();

  auto* gp = leaf(*grp, "gm-pooled", "pooled transconductance", act, [&st](std::ostream& out) {
    const double g = mem::transconductance_pooled(st.d["di"], st.d["di1"], st.d["di2"], st.d["dv"],
                                                  st.d["dva"], st.d["dvb"]);
    row(out, "mean_gm", num(g) + " S");
    row(out, "delta_gm_cnt", num(mem::delta_gm_cnt(g, st.d["gm1"])) + " S");
  });
  gp->add_option("--di-ds", st.d["di"])->required();
  gp->add_option("--di-cnt1", st.d["di1"])->required();
  gp->add_option("--di-cnt2", st.d["di2"])->required();
  gp->add_option("--dv-gs", st.d["dv"])->required();
  gp->add_option("--dv-alpha", st.d["dva"])->required();
  gp->add_option("--dv-beta", st.d["dvb"])->required();
  gp->add_option("--gm1", st.d["gm1"], "baseline g_m1")->default_val(0.0);

  auto* qe = leaf(*grp, "qe", "fermionic quantum efficiency", act, [&st](std::ostream& out) {
    out << num(mem::quantum_efficiency(st.n["collected"], st.n["storable"])) << '\n';
  });
  qe->add_option("--collected", st.n["collected"])->required();
  qe->add_option("--storable", st.n["storable"])->required();

  auto* fifo = leaf(*grp, "fifo", "first-in-first-out cell allocation", act, [&st](std::ostream& out) {
    std::vector<mem::Carrier> carriers;
    std::int64_t id = 0;
    for (const auto& item : split(st.s["arrivals"], ',')) {
      carriers.push_back({id++, parse_double(item, "--arrivals"), mem::ChargeSign::Electron});
    }
    const std::size_t cells = st.n["cells"] ? st.n["cells"] : carriers.size();
    const auto alloc = mem::waterfall_allocate(carriers, mem::CellMap::linear(cells));
    for (const auto& [carrier, address] : alloc.address_of) {
      row(out, "carrier " + std::to_string(carrier), "-> cell " + std::to_string(address));
    }
  });
  fifo->add_option("--arrivals", st.s["arrivals"], "arrival times; carrier ids are positions")->required();
  fifo->add_option("--cells", st.n["cells"], "number of cells (default: one per carrier)")->default_val(0);
}

void add_rel(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("rel", "relativistic timing");
  grp->require_subcommand(1);

  auto* tf = leaf(*grp, "factor", "time factor 1/sqrt(1 - beta^2)", act, [&st](std::ostream& out) {
    out << num(rel::time_factor(rel::Velocity::make(st.d["beta"]))) << '\n';
  });
  tf->add_option("--beta", st.d["beta"], "v / c")->required();

  auto* pr = leaf(*grp, "proper", "proper-time delta", act, [&st](std::ostream& out) {
    out << num(rel::proper_time_delta_general(st.d["dt"], st.d["vx"], st.d["vy"], st.d["vz"])) << " s\n";
  });
  pr->add_option("--dt", st.d["dt"])->required();
  pr->add_option("--vx", st.d["vx"], "km/s")->default_val(0.0);
  pr->add_option("--vy", st.d["vy"], "km/s")->default_val(0.0);
  pr->add_option("--vz", st.d["vz"], "km/s")->default_val(0.0);

  auto* si = leaf(*grp, "simul", "simultaneity proper-time bound", act, [&st](std::ostream& out) {
    const auto r = rel::proper_time_delta_simultaneity(st.d["dt"], rel::Velocity::make(st.d["beta"]));
    if (const auto* v = std::get_if<double>(&r)) {
      out << num(*v) << " s\n";
    } else {
      out << "imaginary (radicand " << num(std::get<rel::ImaginaryProperTime>(r).radicand) << ")\n";
    }
  });
  si->add_option("--dt", st.d["dt"])->required();
  si->add_option("--beta", st.d["beta"])->required();

  auto* sp = leaf(*grp, "stored", "stored proper time", act, [&st](std::ostream& out) {
    out << num(rel::stored_proper_time(st.d["tdot"])) << '\n';
  });
  sp->add_option("--tdot", st.d["tdot"])->required();

  auto* po = leaf(*grp, "polar", "cartesian to polar with Jacobian", act, [&st](std::ostream& out) {
    const auto p = rel::polar_from_cartesian(st.d["x"], st.d["y"]);
    row(out, "r", num(p.r));
    row(out, "phi", num(p.phi));
    row(out, "jacobian", num(rel::jacobian_polar(p)));
  });
  po->add_option("--x", st.d["x"])->required();
  po->add_option("--y", st.d["y"])->required();

  auto* ca = leaf(*grp, "cartesian", "polar to cartesian", act, [&st](std::ostream& out) {
    const auto c = rel::cartesian_from_polar({st.d["r"], st.d["phi"]});
    row(out, "x", num(c.x));
    row(out, "y", num(c.y));
  });
  ca->add_option("--r", st.d["r"])->required();
  ca->add_option("--phi", st.d["phi"])->required();

  auto* ch = leaf(*grp, "charge", "charge balance Q(t2)", act, [&st](std::ostream& out) {
    const auto q = rel::charge_balance(rel::ChargeLedger::make(st.d["q1"], st.d["in"], st.d["out"]));
    out << num(q.coulombs(), "%.17g") << " C\n";
  });
  ch->add_option("--q1", st.d["q1"])->required();
  ch->add_option("--in", st.d["in"])->default_val(0.0);
  ch->add_option("--out", st.d["out"])->default_val(0.0);

  auto* de = leaf(*grp, "density", "plate charge density Q / (2V)", act, [&st](std::ostream& out) {
    out << num(rel::charge_density(st.d["q"], st.d["vol"])) << " C/m^3\n";
  });
  de->add_option("--q", st.d["q"])->required();
  de->add_option("--volume", st.d["vol"])->required();

  auto* mo = leaf(*grp, "moire", "Moire wavelength", act, [&st](std::ostream& out) {
    const bool spacing = st.d["mxp"] != 0.0;
    const bool pitch = st.d["mdp"] != 0.0;
    if (spacing && pitch) {
      const auto c = rel::moire_consistency(st.d["mx0"], st.d["mx1"], st.d["mxp"], st.d["mp"], st.d["mdp"],
                                            st.d["tol"]);
      row(out, "from spacing", num(c.from_spacing));
      row(out, "from pitch", num(c.from_pitch));
      row(out, "order n", num(c.order));
      row(out, "agree", c.agree ? "yes" : "no");
    } else if (spacing) {
      out << num(rel::moire_wavelength(st.d["mx0"], st.d["mx1"], st.d["mxp"])) << " m\n";
    } else if (pitch) {
      out << num(rel::moire_wavelength_from_pitch(st.d["mp"], st.d["mdp"])) << " m\n";
    } else {
      throw CLI::ValidationError("moire", "give --x-pattern and/or --delta-pitch");
    }
  });
  mo->add_option("--x-delta0", st.d["mx0"])->default_val(0.0);
  mo->add_option("--x-delta", st.d["mx1"])->default_val(0.0);
  mo->add_option("--x-pattern", st.d["mxp"])->default_val(0.0);
  mo->add_option("--pitch", st.d["mp"])->default_val(0.0);
  mo->add_option("--delta-pitch", st.d["mdp"])->default_val(0.0);
  mo->add_option("--tolerance", st.d["tol"])->default_val(1e-9);
}

void add_sort(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("sort", "partitioned parallel sort harness");
  grp->require_subcommand(1);

  auto* run = leaf(*grp, "run", "sort random keys and verify", act, [&st](std::ostream& out) {
    std::mt19937_64 rng(st.n["seed"]);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> keys(st.n["size"]);
    for (auto& k : keys) k = dist(rng);
    auto reference = keys;
    std::sort(reference.begin(), reference.end());
    const auto instance = ptvda::SortInstance<double>::make(std::move(keys), st.n["partitions"]);
    const auto t0 = std::chrono::steady_clock::now();
    const auto sorted = ptvda::parallel_sort(instance);
    const auto t1 = std::chrono::steady_clock::now();
    row(out, "n", std::to_string(sorted.size()));
    row(out, "partitions", std::to_string(instance.partitions));
    row(out, "matches reference", sorted == reference ? "yes" : "no");
    row(out, "elapsed_s", num(std::chrono::duration<double>(t1 - t0).count()));
  });
  run->add_option("--size", st.n["size"])->default_val(100000);
  run->add_option("--partitions", st.n["partitions"])->default_val(4);
  run->add_option("--seed", st.n["seed"])->default_val(1);

  auto* probe = leaf(*grp, "probe", "complexity scaling probe", act, [&st](std::ostream& out) {
    std::vector<std::size_t> sizes;
    for (const double v : parse_number_list(st.s["sizes"])) sizes.push_back(static_cast<std::size_t>(v));
    ptvda::ProbeOptions opts;
    opts.trials = st.n["trials"];
    opts.partitions = st.n["partitions"];
    opts.pattern = parse_pattern(st.s["pattern"]);
    const auto p = ptvda::scaling_probe(sizes, opts);
    for (const auto& [n, t] : p.measured) row(out, "n=" + std::to_string(n), num(t) + " s");
    for (const auto& w : p.warnings) row(out, "warning", w);
    if (p.fitted_model) {
      row(out, "fit a (n ln n)", num(p.fitted_model->a));
      row(out, "fit b", num(p.fitted_model->b));
      row(out, "fit residual", num(p.fitted_model->residual_rms));
    }
    if (p.loglog_slope) row(out, "log-log slope", num(*p.loglog_slope));
    row(out, "sub-quadratic", p.sub_quadratic() ? "yes" : "no");
  });
  probe->add_option("--sizes", st.s["sizes"], "comma list of sizes")->default_val("1000,10000,100000");
  probe->add_option("--trials", st.n["trials"])->default_val(3);
  probe->add_option("--partitions", st.n["partitions"])->default_val(4);
  probe->add_option("--pattern", st.s["pattern"])
      ->default_val("uniform")
      ->check(CLI::IsMember({"uniform", "sorted", "identical"}));

  auto* cl = leaf(*grp, "classify", "asymptotic ratio class of n / n'", act, [&st](std::ostream& out) {
    out << ratio_name(ptvda::classify_ratio(parse_extent(st.s["n"]), parse_extent(st.s["np"]), st.d["m"]))
        << '\n';
  });
  cl->add_option("--n", st.s["n"], "size or 'inf'")->required();
  cl->add_option("--n-prime", st.s["np"], "size or 'inf'")->required();
  cl->add_option("--m-bound", st.d["m"])->default_val(ptvda::default_m_bound);
}

std::function<double(double, double)> plane_integrand(const std::string& name) {
  if (name == "1") return [](double, double) { return 1.0; };
  if (name == "x+y") return [](double x, double y) { return x + y; };
  if (name == "xy") return [](double x, double y) { return x * y; };
  return [](double x, double y) { return std::exp(x + y); };
}

std::function<double(double, double, double)> volume_integrand(const std::string& name) {
  if (name == "1") return [](double, double, double) { return 1.0; };
  if (name == "t") return [](double, double, double t) { return t; };
  if (name == "xyt") return [](double x, double y, double t) { return x * y * t; };
  return [](double x, double y, double t) { return std::exp(x + y + t); };
}

void add_geom(CLI::App& app, State& st, Action& act) {
  auto* grp = app.add_subcommand("geom", "comlink plane geometry");
  grp->require_subcommand(1);

  auto* sl = leaf(*grp, "segment", "slope and length of P1P2", act, [&st](std::ostream& out) {
    const auto a = geom::segment_attributes(parse_point(st.s["p1"]), parse_point(st.s["p2"]));
    row(out, "slope", a.slope ? num(*a.slope) : "undefined (vertical)");
    row(out, "length", num(a.length));
  });
  sl->add_option("--p1", st.s["p1"], "x,y")->required();
  sl->add_option("--p2", st.s["p2"], "x,y")->required();

  auto* arc = leaf(*grp, "arc", "shared arc PP' from two decompositions", act, [&st](std::ostream& out) {
    const auto d = geom::ArcDecomposition::make(st.d["ab"], st.d["ap"], st.d["pb"], st.d["ba"], st.d["bp"],
                                                st.d["pa"]);
    const auto s = geom::shared_arc(d, st.d["tol"]);
    row(out, "PP' (AB)", num(s.length));
    row(out, "PP' (B'A')", num(s.length_other));
    row(out, "consistent", s.consistent ? "yes" : "no");
  });
  for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
           {"--ab", "ab"}, {"--ap", "ap"}, {"--pb", "pb"}, {"--ba", "ba"}, {"--bp", "bp"}, {"--pa", "pa"}}) {
    arc->add_option(flag, st.d[key])->required();
  }
  arc->add_option("--tolerance", st.d["tol"])->default_val(1e-9);

  auto* area = leaf(*grp, "area", "midpoint Riemann double integral", act, [&st](std::ostream& out) {
    const geom::Rect r{st.d["x0"], st.d["x1"], st.d["y0"], st.d["y1"]};
    out << num(geom::riemann_area(plane_integrand(st.s["f"]), r, st.n["m"], st.n["n"]), "%.10g") << '\n';
  });
  area->add_option("--f", st.s["f"])->default_val("1")->check(CLI::IsMember({"1", "x+y", "xy", "exp"}));
  area->add_option("--m", st.n["m"])->default_val(100);
  area->add_option("--n", st.n["n"])->default_val(100);
  area->add_option("--x0", st.d["x0"])->default_val(0.0);
  area->add_option("--x1", st.d["x1"])->default_val(1.0);
  area->add_option("--y0", st.d["y0"])->default_val(0.0);
  area->add_option("--y1", st.d["y1"])->default_val(1.0);

  auto* vol = leaf(*grp, "triple", "midpoint triple integral over the unit cube", act, [&st](std::ostream& out) {
    const auto k = st.n["res"];
    out << num(geom::triple_integral(volume_integrand(st.s["f"]), geom::Box{}, {k, k, k}), "%.10g") << '\n';
  });
  vol->add_option("--f", st.s["f"])->default_val("1")->check(CLI::IsMember({"1", "t", "xyt", "exp"}));
  vol->add_option("--res", st.n["res"])->default_val(100);

  auto* ts = leaf(*grp, "timesplit", "log_t(t t_par) fold check", act, [&st](std::ostream& out) {
    const auto r = geom::time_split_check(st.d["t"], st.d["tp"]);
    row(out, "value", num(r.value, "%.12g"));
    row(out, "fold", r.is_fold ? "yes" : "no");
  });
  ts->add_option("--t", st.d["t"])->required();
  ts->add_option("--t-par", st.d["tp"])->required();

  auto* kin = leaf(*grp, "kinematics", "planar v, a, v_sync", act, [&st](std::ostream& out) {
    const auto k = geom::planar_kinematics(
        {parse_point(st.s["pb"]), parse_point(st.s["pp"]), st.d["t"], st.d["tp"]});
    row(out, "v", num(k.v));
    row(out, "a", num(k.a));
    row(out, "v_sync", num(k.v_sync));
  });
  kin->add_option("--pb", st.s["pb"], "displacement pB as dx,dy")->required();
  kin->add_option("--pp", st.s["pp"], "displacement PP' as dx,dy")->default_val("0,0");
  kin->add_option("--t", st.d["t"])->required();
  kin->add_option("--t-par", st.d["tp"])->required();
}

void add_pipeline(CLI::App& app, State& st, Action& act) {
  auto* sheet = leaf(app, "sheet", "build the link table and write CSV", act, [&st](std::ostream& out) {
    const auto cfg = analysis::load_config(st.s["config"]);
    if (cfg.targets.empty()) throw domain_error(st.s["config"] + ": no [target.<name>] sections");
    link::Timestamp base;
    if (!st.s["base"].empty()) {
      base = link::Timestamp::parse(st.s["base"]);
    } else if (cfg.base_time) {
      base = *cfg.base_time;
    } else {
      throw domain_error("no base time: pass --base-time or set [defaults] base_time");
    }
    const auto progress = parse_number_list(st.s["progress"]);
    const auto s = analysis::build_sheet(cfg.targets, progress, base);
    analysis::emit_csv(s, st.s["out"]);
    out << "wrote " << s.records.size() << " records to " << st.s["out"] << " (digest "
        << s.metadata.source_digest << ")\n";
  });
  sheet->add_option("--config", st.s["config"], "INI file with [target.<name>] sections")->required();
  sheet->add_option("--progress", st.s["progress"], "progress list, e.g. 0,8,16,...,96")->required();
  sheet->add_option("--out", st.s["out"], "CSV output path")->required();
  sheet->add_option("--base-time", st.s["base"], "HH:MM:SS (overrides the config)");

  auto* chart = leaf(app, "chart", "render a link-table CSV as a radar chart", act, [&st](std::ostream& out) {
    const auto s = analysis::parse_csv(st.s["in"]);
    const auto warnings = analysis::render_radar_chart(s, st.s["svg"]);
    for (const auto& w : warnings) out << "warning: " << w << '\n';
    out << "wrote " << st.s["svg"] << " (" << s.records.size() << " spokes)\n";
  });
  chart->add_option("--in", st.s["in"], "CSV produced by 'sheet'")->required();
  chart->add_option("--out", st.s["svg"], "SVG output path")->required();
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  const auto items = split(text, ',');
  std::vector<double> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] != "...") {
      out.push_back(parse_double(items[i], "list"));
      continue;
    }
    if (out.size() < 2 || i + 1 >= items.size()) {
      throw CLI::ValidationError("list", "'...' needs two values before it and one after");
    }
    const double step = out[out.size() - 1] - out[out.size() - 2];
    const double last = parse_double(items[i + 1], "list");
    if (!(step > 0.0) || last < out.back()) {
      throw CLI::ValidationError("list", "'...' needs an increasing step up to the final value");
    }
    const double first = out.back();
    const auto count = std::llround((last - first) / step);
    if (std::abs(first + static_cast<double>(count) * step - last) > 1e-9 * std::max(1.0, std::abs(last))) {
      throw CLI::ValidationError("list", "final value is not reached by the step");
    }
    for (long long k = 1; k < count; ++k) out.push_back(first + static_cast<double>(k) * step);
    if (count > 0) out.push_back(last);
    ++i;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"timedata-lab: light-time link, timing, optics and geometry calculations", "timedata-lab"};
  app.require_subcommand(1);

  State st;
  Action action;
  add_link(app, st, action);
  add_optics(app, st, action);
  add_mem(app, st, action);
  add_rel(app, st, action);
  add_sort(app, st, action);
  add_geom(app, st, action);
  add_pipeline(app, st, action);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (action) action(out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage_failure;
  } catch (const timedata::error& e) {
    err << "error: " << e.what() << '\n';
    return domain_failure;
  }
  return ok;
}

}  // namespace timedata::cli
