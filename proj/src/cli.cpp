#include "jetcurv/cli.hpp"

#include "jetcurv/curvature.hpp"
#include "jetcurv/oracle.hpp"
#include "jetcurv/zero_test.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jetcurv {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0]))))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

int parse_int(std::string_view s, const std::string& what, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw SpecError("'" + what + "' wants an integer, got '" + std::string(s) +
                        "'",
                    line);
  return v;
}

double parse_positive(std::string_view s, const std::string& what, int line) {
  std::string owned(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != owned.size() || !(v > 0))
    throw SpecError("'" + what + "' wants a positive number, got '" + owned +
                        "'",
                    line);
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
}

// Keys shaped like name[i][j] or name[i][j][k]; returns the 1-based indices.
std::vector<int> bracket_indices(std::string_view key, char lead, int count,
                                 int line) {
  std::string shape = std::string(1, lead);
  for (int i = 0; i < count; ++i) shape += "[...]";
  auto bad = [&]() -> SpecError {
    return SpecError("key '" + std::string(key) + "' should look like " + shape,
                     line);
  };
  if (key.empty() || key[0] != lead) throw bad();
  key.remove_prefix(1);
  std::vector<int> idx;
  for (int i = 0; i < count; ++i) {
    if (key.empty() || key[0] != '[') throw bad();
    std::size_t close = key.find(']');
    if (close == std::string_view::npos) throw bad();
    std::string_view body = trim(key.substr(1, close - 1));
    int v = 0;
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc{} || p != body.data() + body.size()) throw bad();
    idx.push_back(v);
    key.remove_prefix(close + 1);
  }
  if (!key.empty()) throw bad();
  return idx;
}

}  // namespace

SystemSpec parse_spec(std::string_view text) {
  SystemSpec spec;
  spec.hash = fnv1a64(text);

  enum class Section { None, System, F, Slice, MetricG, MetricH, Options };
  Section section = Section::None;
  bool saw_system = false, saw_f = false, saw_options = false;
  int n_line = 0, m_line = 0, x_line = 0, y_line = 0;
  bool saw_pp = false, saw_seed = false, saw_ts = false, saw_tn = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv = raw;
    if (std::size_t hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;

    if (sv.front() == '[') {
      if (sv.back() != ']')
        throw SpecError("section header does not close: '" + std::string(sv) +
                            "'",
                        line);
      std::string_view name = trim(sv.substr(1, sv.size() - 2));
      auto need_system = [&]() {
        if (!saw_system)
          throw SpecError("[system] must come before [" + std::string(name) +
                              "]",
                          line);
      };
      if (name == "system") {
        if (saw_system) throw SpecError("duplicate [system] section", line);
        saw_system = true;
        section = Section::System;
      } else if (name == "F") {
        need_system();
        if (saw_f) throw SpecError("duplicate [F] section", line);
        saw_f = true;
        section = Section::F;
      } else if (name == "options") {
        if (saw_options) throw SpecError("duplicate [options] section", line);
        saw_options = true;
        section = Section::Options;
      } else if (name == "metric g") {
        need_system();
        if (spec.has_g) throw SpecError("duplicate [metric g] section", line);
        spec.has_g = true;
        spec.g_line = line;
        section = Section::MetricG;
      } else if (name == "metric h") {
        need_system();
        if (spec.has_h) throw SpecError("duplicate [metric h] section", line);
        spec.has_h = true;
        spec.h_line = line;
        section = Section::MetricH;
      } else if (name.substr(0, 6) == "slice " || name == "slice") {
        need_system();
        std::string slice_name{trim(name.substr(5))};
        if (slice_name.empty())
          throw SpecError("slice section needs a name: [slice NAME]", line);
        for (const SliceSpec& s : spec.slices)
          if (s.name == slice_name)
            throw SpecError("duplicate slice '" + slice_name + "'", line);
        spec.slices.push_back({slice_name, line, {}, {}});
        section = Section::Slice;
      } else {
        throw SpecError("unknown section [" + std::string(name) + "]", line);
      }
      continue;
    }

    std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw SpecError("expected 'key = value', got '" + std::string(sv) + "'",
                      line);
    std::string key{trim(sv.substr(0, eq))};
    std::string value{trim(sv.substr(eq + 1))};
    if (key.empty()) throw SpecError("empty key", line);
    if (value.empty())
      throw SpecError("empty value for '" + key + "'", line);

    switch (section) {
      case Section::None:
        throw SpecError("key '" + key + "' appears before any section", line);

      case Section::System: {
        if (key == "n" || key == "m") {
          int& slot = key == "n" ? spec.n : spec.m;
          int& at = key == "n" ? n_line : m_line;
          if (at) throw SpecError("duplicate key '" + key + "'", line);
          at = line;
          slot = parse_int(value, key, line);
          if (slot < 1)
            throw SpecError("'" + key + "' must be at least 1", line);
        } else if (key == "x" || key == "y") {
          auto& slot = key == "x" ? spec.xs : spec.ys;
          int& at = key == "x" ? x_line : y_line;
          if (at) throw SpecError("duplicate key '" + key + "'", line);
          at = line;
          for (std::string_view piece : split_commas(value)) {
            if (!is_identifier(piece))
              throw SpecError("'" + key + "' entries must be identifiers, got '" +
                                  std::string(piece) + "'",
                              line);
            slot.emplace_back(piece);
          }
        } else {
          throw SpecError("unknown [system] key '" + key + "'", line);
        }
        break;
      }

      case Section::F: {
        auto idx = bracket_indices(key, 'F', 3, line);
        int s = idx[0], i = idx[1], j = idx[2];
        if (s < 1 || s > spec.m)
          throw SpecError("fibre index in '" + key + "' is out of range 1.." +
                              std::to_string(spec.m),
                          line);
        if (i < 1 || j < 1 || i > spec.n || j > spec.n)
          throw SpecError("base index in '" + key + "' is out of range 1.." +
                              std::to_string(spec.n),
                          line);
        if (i > j)
          throw SpecError("'" + key + "' uses i > j; store entries with i <= j",
                          line);
        std::array<int, 3> at{s - 1, i - 1, j - 1};
        if (spec.f.count(at))
          throw SpecError("duplicate key '" + key + "'", line);
        spec.f[at] = {value, line};
        break;
      }

      case Section::Slice: {
        SliceSpec& sl = spec.slices.back();
        if (key != "phi" && key != "v")
          throw SpecError("unknown slice key '" + key + "'", line);
        auto& slot = key == "phi" ? sl.phi : sl.v;
        if (!slot.empty())
          throw SpecError("duplicate key '" + key + "' in slice '" + sl.name +
                              "'",
                          line);
        for (std::string_view piece : split_commas(value)) {
          if (piece.empty())
            throw SpecError("empty component in '" + key + "'", line);
          slot.push_back({std::string(piece), line});
        }
        if (static_cast<int>(slot.size()) != spec.n)
          throw SpecError("'" + key + "' needs " + std::to_string(spec.n) +
                              " components, got " + std::to_string(slot.size()),
                          line);
        break;
      }

      case Section::MetricG:
      case Section::MetricH: {
        bool base = section == Section::MetricG;
        char lead = base ? 'g' : 'h';
        int dim = base ? spec.n : spec.m;
        auto idx = bracket_indices(key, lead, 2, line);
        int i = idx[0], j = idx[1];
        if (i < 1 || j < 1 || i > dim || j > dim)
          throw SpecError("index in '" + key + "' is out of range 1.." +
                              std::to_string(dim),
                          line);
        std::array<int, 2> at{std::min(i, j) - 1, std::max(i, j) - 1};
        auto& slot = base ? spec.g : spec.h;
        if (slot.count(at))
          throw SpecError("duplicate metric entry '" + key +
                              "' (the matrix is symmetric; give i <= j once)",
                          line);
        slot[at] = {value, line};
        break;
      }

      case Section::Options: {
        auto once = [&](bool& seen) {
          if (seen) throw SpecError("duplicate key '" + key + "'", line);
          seen = true;
        };
        if (key == "probe_points") {
          once(saw_pp);
          spec.options.probe_points = parse_int(value, key, line);
          if (spec.options.probe_points < 1)
            throw SpecError("'probe_points' must be at least 1", line);
        } else if (key == "seed") {
          once(saw_seed);
          try {
            spec.options.seed = parse_seed(value);
          } catch (const DomainError& e) {
            throw SpecError(e.what(), line);
          }
        } else if (key == "tol_sym") {
          once(saw_ts);
          spec.options.tol_sym = parse_positive(value, key, line);
        } else if (key == "tol_num") {
          once(saw_tn);
          spec.options.tol_num = parse_positive(value, key, line);
        } else {
          throw SpecError("unknown [options] key '" + key + "'", line);
        }
        break;
      }
    }
  }

  if (!saw_system) throw SpecError("no [system] section", line ? line : 1);
  if (!n_line) throw SpecError("[system] is missing 'n'", line);
  if (!m_line) throw SpecError("[system] is missing 'm'", line);
  if (!x_line) throw SpecError("[system] is missing 'x'", line);
  if (!y_line) throw SpecError("[system] is missing 'y'", line);
  if (static_cast<int>(spec.xs.size()) != spec.n)
    throw SpecError("'x' lists " + std::to_string(spec.xs.size()) +
                        " names but n = " + std::to_string(spec.n),
                    x_line);
  if (static_cast<int>(spec.ys.size()) != spec.m)
    throw SpecError("'y' lists " + std::to_string(spec.ys.size()) +
                        " names but m = " + std::to_string(spec.m),
                    y_line);
  for (const SliceSpec& sl : spec.slices) {
    if (sl.phi.empty())
      throw SpecError("slice '" + sl.name + "' is missing 'phi'", sl.line);
    if (sl.v.empty())
      throw SpecError("slice '" + sl.name + "' is missing 'v'", sl.line);
  }

  for (int s = 0; s < spec.m; ++s)
    for (int i = 0; i < spec.n; ++i)
      for (int j = i; j < spec.n; ++j)
        if (!spec.f.count({s, i, j}))
          spec.warnings.push_back(
              "F[" + std::to_string(s + 1) + "][" + std::to_string(i + 1) +
              "][" + std::to_string(j + 1) + "] not given, using 0");
  return spec;
}

SystemSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read spec file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace {

Expr parse_blame(const JetContext& ctx, const SpecEntry& e,
                 const std::string& what) {
  try {
    return ctx.parse_expr(e.text);
  } catch (const SymbolicError& err) {
    throw SpecError("in '" + what + "': " + err.what(), e.line);
  }
}

}  // namespace

Instance instantiate(const SystemSpec& spec) {
  auto ctx = std::make_shared<JetContext>(spec.xs, spec.ys);
  Connection c(*ctx);
  for (const auto& [key, entry] : spec.f) {
    auto [s, i, j] = std::array{key[0], key[1], key[2]};
    std::string what = "F[" + std::to_string(s + 1) + "][" +
                       std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                       "]";
    c.set(s, i, j, parse_blame(*ctx, entry, what));
  }

  Instance inst{ctx, std::move(c), {}, std::nullopt, std::nullopt};

  for (const SliceSpec& sl : spec.slices) {
    std::vector<Expr> phi, v;
    for (const SpecEntry& e : sl.phi)
      phi.push_back(parse_blame(*ctx, e, "slice " + sl.name + " phi"));
    for (const SpecEntry& e : sl.v)
      v.push_back(parse_blame(*ctx, e, "slice " + sl.name + " v"));
    try {
      inst.slices.emplace_back(sl.name,
                               make_slice(*ctx, std::move(phi), std::move(v)));
    } catch (const DomainError& e) {
      throw SpecError("slice '" + sl.name + "': " + e.what(), sl.line);
    }
  }

  auto fill = [&](const std::map<std::array<int, 2>, SpecEntry>& src, int dim,
                  char lead) {
    std::vector<Expr> entries(static_cast<std::size_t>(dim) * dim,
                              make_num(0));
    for (const auto& [at, entry] : src) {
      std::string what = std::string(1, lead) + "[" +
                         std::to_string(at[0] + 1) + "][" +
                         std::to_string(at[1] + 1) + "]";
      Expr e = parse_blame(*ctx, entry, what);
      entries[static_cast<std::size_t>(at[0]) * dim + at[1]] = e;
      entries[static_cast<std::size_t>(at[1]) * dim + at[0]] = e;
    }
    return entries;
  };
  if (spec.has_g) {
    try {
      inst.metric_g = make_base_metric(*ctx, fill(spec.g, spec.n, 'g'));
    } catch (const DomainError& e) {
      throw SpecError(std::string("[metric g]: ") + e.what(), spec.g_line);
    }
  }
  if (spec.has_h) inst.metric_h = fill(spec.h, spec.m, 'h');
  return inst;
}

bool RunReport::pass() const { return failed() == 0; }

int RunReport::failed() const {
  int k = 0;
  for (const ReportRow& r : rows) k += r.status == "fail";
  return k;
}

std::uint64_t parse_seed(const std::string& text) {
  std::string_view sv = trim(text);
  int base = 10;
  if (sv.size() > 2 && sv[0] == '0' && (sv[1] == 'x' || sv[1] == 'X')) {
    base = 16;
    sv.remove_prefix(2);
  }
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v, base);
  if (ec != std::errc{} || p != sv.data() + sv.size() || sv.empty())
    throw DomainError("bad seed '" + text + "' (decimal or 0x hex)", text);
  return v;
}

namespace {

struct Resolved {
  std::uint64_t seed;
  int points;
  double tol_sym, tol_num;

  ZeroOptions zero() const {
    ZeroOptions o;
    o.points = points;
    o.seed = seed;
    o.tol = tol_sym;
    return o;
  }
};

Resolved resolve(const SpecOptions& o, const RunFlags& f,
                 const char* env_seed) {
  Resolved r;
  r.seed = f.seed   ? *f.seed
           : env_seed ? parse_seed(env_seed)
                      : o.seed;
  r.points = f.points > 0 ? f.points : o.probe_points;
  r.tol_sym = f.tol ? *f.tol : o.tol_sym;
  r.tol_num = f.tol ? *f.tol : o.tol_num;
  return r;
}

ReportRow check_row(std::string name, bool ok, double tol) {
  ReportRow r;
  r.name = std::move(name);
  r.status = ok ? "pass" : "fail";
  r.tolerance = tol;
  return r;
}

ReportRow value_row(std::string name, std::string value) {
  ReportRow r;
  r.name = std::move(name);
  r.status = "info";
  r.value = std::move(value);
  return r;
}

// The named slice, or the first declared one when no name was given. The
// report records which slice was used either way.
const std::pair<std::string, Slice>& pick_slice(const Instance& inst,
                                                const RunFlags& flags,
                                                const std::string& cmd) {
  if (inst.slices.empty())
    throw DomainError("'" + cmd + "' needs a [slice NAME] block in the spec",
                      "slice");
  if (flags.slice.empty()) return inst.slices.front();
  for (const auto& entry : inst.slices)
    if (entry.first == flags.slice) return entry;
  throw DomainError("no slice named '" + flags.slice + "' in the spec",
                    "slice");
}

// Lift table rows, one per nonzero coefficient, or a single "H = 0".
void h_rows(const JetContext& ctx, const HTable& H, const Resolved& r,
            RunReport& out) {
  bool any = false;
  for (int nu = 0; nu < ctx.m(); ++nu)
    for (int sig = 0; sig < ctx.m(); ++sig)
      for (int k = 0; k < ctx.n(); ++k) {
        const Expr& e = H.at(nu, sig, k);
        if (is_zero(e, r.zero()).zero) continue;
        any = true;
        out.rows.push_back(value_row("H[" + ctx.dir_name(ctx.dir_y(nu)) + "][" +
                                         ctx.dir_name(ctx.dir_y(sig)) + "][" +
                                         ctx.dir_name(ctx.dir_x(k)) + "]",
                                     print(e)));
      }
  if (!any) out.rows.push_back(value_row("H", "0"));
}

void vector_rows(const JetContext& ctx, const std::string& prefix,
                 const VectorField& f, const Resolved& r, RunReport& out) {
  for (int d = 0; d < ctx.dim(); ++d) {
    if (is_zero(f.comp[d], r.zero()).zero) continue;
    out.rows.push_back(
        value_row(prefix + " @ " + ctx.dir_name(d), print(f.comp[d])));
  }
}

void cmd_split(const Instance& inst, const Slice& s, const Resolved& r,
               RunReport& out) {
  SplitFrame fr = build_split_frame(inst.connection, s);
  out.rows.push_back(check_row("frame", true, r.tol_sym));
  h_rows(*inst.ctx, fr.H, r, out);
}

void cmd_curvature(const Instance& inst, const Slice& s, const Resolved& r,
                   RunReport& out) {
  const JetContext& ctx = *inst.ctx;
  const Connection& c = inst.connection;
  SplitFrame fr = build_split_frame(c, s);
  CurvatureReport rep = curvature_report(c, fr);

  const int n = ctx.n(), m = ctx.m();

  if (components_zero(rep.r_gamma.comp, r.zero()).zero) {
    out.rows.push_back(value_row("R_Gamma", "0"));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        vector_rows(ctx,
                    "R_Gamma[" + ctx.dir_name(ctx.dir_x(i)) + "][" +
                        ctx.dir_name(ctx.dir_x(j)) + "]",
                    lie_bracket(ctx, fr.gamma[i], fr.gamma[j]), r, out);
  }

  if (components_zero(rep.phi.comp, r.zero()).zero) {
    out.rows.push_back(value_row("Phi", "0"));
  } else {
    for (int i = 0; i < n; ++i)
      for (int sig = 0; sig < m; ++sig) {
        VectorField f = jacobi_field(c, fr, i, sig);
        for (int nu = 0; nu < m; ++nu)
          for (int k = 0; k < n; ++k) {
            const Expr& e = f.comp[ctx.dir_jet(nu, k)];
            if (is_zero(e, r.zero()).zero) continue;
            std::string name =
                m == 1 ? "Phi[" + ctx.dir_name(ctx.dir_x(i)) + "][" +
                             ctx.dir_name(ctx.dir_x(k)) + "]"
                       : "Phi[" + ctx.dir_name(ctx.dir_x(i)) + "][" +
                             ctx.dir_name(ctx.dir_y(sig)) + "] @ " +
                             ctx.dir_name(ctx.dir_jet(nu, k));
            out.rows.push_back(value_row(std::move(name), print(e)));
          }
      }
  }

  if (components_zero(rep.r_h.comp, r.zero()).zero) {
    out.rows.push_back(value_row("R_H", "0"));
  } else {
    for (int sig = 0; sig < m; ++sig)
      for (int rho = sig + 1; rho < m; ++rho)
        vector_rows(ctx,
                    "R_H[" + ctx.dir_name(ctx.dir_y(sig)) + "][" +
                        ctx.dir_name(ctx.dir_y(rho)) + "]",
                    lie_bracket(ctx, fr.h_fields[sig], fr.h_fields[rho]), r,
                    out);
  }

  if (components_zero(rep.r_plus.comp, r.zero()).zero) {
    out.rows.push_back(value_row("r_plus", "0"));
  } else {
    // Values on frame pairs; labels follow the frame order.
    std::vector<VectorField> frame = fr.frame();
    std::vector<std::string> labels;
    for (int sig = 0; sig < m; ++sig)
      labels.push_back("H[" + ctx.dir_name(ctx.dir_y(sig)) + "]");
    for (int i = 0; i < n; ++i)
      labels.push_back("Gamma[" + ctx.dir_name(ctx.dir_x(i)) + "]");
    for (int nu = 0; nu < m; ++nu)
      for (int p = 0; p < n; ++p) {
        if (p == fr.anchor) continue;
        labels.push_back("W[" + ctx.dir_name(ctx.dir_jet(nu, p)) + "]");
      }
    for (int nu = 0; nu < m; ++nu)
      labels.push_back("P[" + ctx.dir_name(ctx.dir_y(nu)) + "]");
    for (std::size_t a = 0; a < frame.size(); ++a)
      for (std::size_t b = a + 1; b < frame.size(); ++b)
        vector_rows(ctx, "r_plus[" + labels[a] + "][" + labels[b] + "]",
                    apply(rep.r_plus, frame[a], frame[b]), r, out);
  }

  out.rows.push_back(
      check_row("vertical_identity", rep.vertical_identity.zero, r.tol_sym));
  out.rows.push_back(
      check_row("refined_identity", rep.refined_identity.zero, r.tol_sym));
}

void cmd_identities(const Instance& inst, const Slice& s, const Resolved& r,
                    RunReport& out) {
  SplitFrame fr = build_split_frame(inst.connection, s);
  out.rows.push_back(
      check_row("vertical_identity",
                check_theorem_vertical(inst.connection, fr).zero, r.tol_sym));
  out.rows.push_back(
      check_row("refined_identity",
                check_theorem_refined(inst.connection, fr).zero, r.tol_sym));
  for (const auto& [label, res] : check_bracket_table(inst.connection, fr))
    out.rows.push_back(check_row(label, res.zero, r.tol_sym));
}

void cmd_compatibility(const Instance& inst, const Slice& s, const Resolved& r,
                       RunReport& out) {
  const JetContext& ctx = *inst.ctx;
  CompatibilityReport rep = check_compatibility(inst.connection, s);
  out.rows.push_back(check_row("compatible", rep.compatible, r.tol_sym));
  for (const auto& w : rep.witnesses) {
    auto [sig, nu, p, q] = std::array{w[0], w[1], w[2], w[3]};
    out.rows.push_back(value_row(
        "obstruction",
        "F[" + ctx.dir_name(ctx.dir_y(sig)) + "][" +
            ctx.dir_name(ctx.dir_x(p)) + "][" + ctx.dir_name(ctx.dir_x(q)) +
            "] depends on " + ctx.dir_name(ctx.dir_jet(nu, rep.axis))));
  }
  if (rep.compatible) {
    SplitFrame fr = d_minus_frame(inst.connection, s);
    out.rows.push_back(check_row("field_free_lift", true, r.tol_sym));
    h_rows(ctx, fr.H, r, out);
  }
}

void cmd_separability(const Instance& inst, const Resolved& r,
                      RunReport& out) {
  SeparabilityReport rep = separability_check(inst.connection);
  out.rows.push_back(check_row("separable", rep.separable, r.tol_sym));
  for (const std::string& v : rep.violations)
    out.rows.push_back(value_row("violation", v));
  out.rows.push_back(check_row("r_h_zero", rep.r_h_zero, r.tol_sym));
  out.rows.push_back(check_row("phi_diagonal", rep.phi_diagonal, r.tol_sym));
  out.rows.push_back(check_row("h_diagonal", rep.h_diagonal, r.tol_sym));
  out.rows.push_back(
      check_row("slice_displays", rep.displays_match, r.tol_sym));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void cmd_eigen_verify(const Instance& inst, const Slice& s, const Resolved& r,
                      RunReport& out) {
  const JetContext& ctx = *inst.ctx;
  VectorValuedForm L = deformation(inst.connection, s);

  std::vector<Expr> guards = inst.connection.entries();
  guards.insert(guards.end(), L.comp.begin(), L.comp.end());
  Prng rng(r.seed);
  std::vector<JetPoint> pts = sample_points(ctx, guards, r.points, rng);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    Mat Lm = assemble(L, pts[i]);
    MatrixCheckReport mr =
        eigen_spectrum_report(Lm, ctx.m(), r.tol_num, kRankThreshold);
    ReportRow row = check_row("point " + std::to_string(i), mr.pass(),
                              r.tol_num);
    row.residual = mr.cube_gap;
    row.value = "rank L = " + std::to_string(mr.rank_l) +
                ", rank(L-I) = " + std::to_string(mr.rank_minus) +
                ", rank(L+I) = " + std::to_string(mr.rank_plus) +
                ", tr L = " + fmt(mr.trace_l) +
                ", tr L^2 = " + fmt(mr.trace_l2);
    out.rows.push_back(std::move(row));
  }
}

void cmd_harmonic(const Instance& inst, const SystemSpec& spec,
                  const Slice& s, const Resolved& r, RunReport& out) {
  if (!inst.metric_g || !inst.metric_h)
    throw DomainError("'harmonic' needs [metric g] and [metric h] blocks",
                      "metric");
  const JetContext& ctx = *inst.ctx;
  RiemannData gd = christoffel(ctx, *inst.metric_g);
  RiemannData hd = fibre_christoffel(ctx, *inst.metric_h);

  for (const auto& [label, res] : harmonic_curvature_check(ctx, gd, hd, s))
    out.rows.push_back(check_row(label, res.zero, r.tol_sym));

  if (!spec.f.empty()) {
    Connection want = harmonic_connection(ctx, gd, hd);
    bool ok = true;
    for (int sig = 0; sig < ctx.m(); ++sig)
      for (int i = 0; i < ctx.n(); ++i)
        for (int j = i; j < ctx.n(); ++j)
          ok = ok && is_zero(inst.connection.at(sig, i, j) -
                                 want.at(sig, i, j),
                             r.zero())
                         .zero;
    out.rows.push_back(check_row("matches_spec_F", ok, r.tol_sym));
  }
}

}  // namespace

RunReport run_command(const std::string& command, const SystemSpec& spec,
                      const RunFlags& flags, const char* env_seed) {
  Resolved r = resolve(spec.options, flags, env_seed);
  RunReport out;
  out.command = command;
  out.spec_hash = spec.hash;
  out.seed = r.seed;

  Instance inst = instantiate(spec);
  auto slice_of = [&](const std::string& cmd) -> const Slice& {
    const auto& [name, s] = pick_slice(inst, flags, cmd);
    out.rows.push_back(value_row("slice", name));
    return s;
  };
  try {
    if (command == "split") {
      cmd_split(inst, slice_of(command), r, out);
    } else if (command == "curvature") {
      cmd_curvature(inst, slice_of(command), r, out);
    } else if (command == "identities") {
      cmd_identities(inst, slice_of(command), r, out);
    } else if (command == "compatibility") {
      cmd_compatibility(inst, slice_of(command), r, out);
    } else if (command == "separability") {
      cmd_separability(inst, r, out);
    } else if (command == "eigen-verify") {
      cmd_eigen_verify(inst, slice_of(command), r, out);
    } else if (command == "harmonic") {
      cmd_harmonic(inst, spec, slice_of(command), r, out);
    } else {
      throw DomainError("unknown command '" + command + "'", command);
    }
  } catch (const DomainError&) {
    throw;  // input problem, caller exits 2
  } catch (const ProbeError&) {
    throw;  // no usable sample points, same treatment
  } catch (const SymbolicError& e) {
    // A failed internal certification is a finding, not an input error.
    ReportRow row;
    row.name = "internal_certification";
    row.status = "fail";
    row.value = e.what();
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

std::string hex16(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string hex0x(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string report_text(const RunReport& rep) {
  std::ostringstream out;
  out << "command: " << rep.command << "\n";
  out << "spec: " << hex16(rep.spec_hash) << "\n";
  out << "seed: " << hex0x(rep.seed) << "\n\n";

  int checks = 0;
  for (const ReportRow& r : rep.rows) {
    if (r.status == "info") {
      out << r.name << " = " << (r.value ? *r.value : "") << "\n";
      continue;
    }
    ++checks;
    out << r.name << ": " << r.status;
    if (r.residual || r.tolerance) {
      out << " (";
      if (r.residual) out << "residual " << fmt(*r.residual);
      if (r.residual && r.tolerance) out << ", ";
      if (r.tolerance) out << "tol " << fmt(*r.tolerance);
      out << ")";
    }
    if (r.value && r.status != "info") out << "  " << *r.value;
    out << "\n";
  }

  out << "\n";
  if (rep.failed() == 0)
    out << "RESULT: PASS (" << checks << " checks)\n";
  else
    out << "RESULT: FAIL (" << rep.failed() << " of " << checks
        << " checks failed)\n";
  return out.str();
}

std::string report_json(const RunReport& rep) {
  nlohmann::ordered_json j;
  j["spec_hash"] = hex16(rep.spec_hash);
  j["seed"] = hex0x(rep.seed);
  j["command"] = rep.command;
  auto rows = nlohmann::ordered_json::array();
  for (const ReportRow& r : rep.rows) {
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["status"] = r.status;
    if (r.value) o["value"] = *r.value;
    if (r.tolerance) o["tolerance"] = *r.tolerance;
    if (r.residual) o["residual"] = *r.residual;
    rows.push_back(std::move(o));
  }
  j["results"] = std::move(rows);
  return j.dump(2) + "\n";
}

int exit_code(const RunReport& rep) { return rep.pass() ? 0 : 1; }

}  // namespace jetcurv
