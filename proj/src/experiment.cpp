#include "kwc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "kwc/fractional_limit.hpp"

namespace kwc {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
    }
    if (used != value.size()) throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string quote_csv(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

void ExperimentConfig::validate() const {
    resolved_params().validate();
    if (epsilons.empty() || cs.empty()) throw std::invalid_argument("config: sweep lists must be nonempty");
    for (double e : epsilons) {
        if (!(e > 0.0)) throw std::invalid_argument("config: epsilon values must be positive");
    }
    if (horizons.empty()) throw std::invalid_argument("config: horizons must be nonempty");
    for (double h : horizons) {
        if (!(h > 0.0)) throw std::invalid_argument("config: horizons must be positive");
    }
    if (n < 2) throw std::invalid_argument("config: N must be >= 2");
    if (dt < 0.0) throw std::invalid_argument("config: dt must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
    if (facets < 2) throw std::invalid_argument("config: facets must be >= 2");
    if (grain_steps < 1) throw std::invalid_argument("config: grain_steps must be >= 1");
}

ModelParams ExperimentConfig::resolved_params() const {
    ModelParams p = params;
    if (!mu_explicit) p.mu = p.a;
    return p;
}

SchemeConfig ExperimentConfig::scheme(double L, double t_end_override) const {
    const double dx = L / n;
    SchemeConfig s;
    s.dt = dt > 0.0 ? dt : dx * dx;
    s.t_end = t_end_override > 0.0 ? t_end_override : t_end;
    s.theta = theta;
    return s;
}

void apply_setting(ExperimentConfig& config, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    auto number = [&] { return parse_double(key, value); };
    if (key == "experiment") config.experiment = value;
    else if (key == "a") config.params.a = number();
    else if (key == "b") config.params.b = number();
    else if (key == "c") config.params.c = number();
    else if (key == "mu") {
        config.params.mu = number();
        config.mu_explicit = true;
    } else if (key == "tau1") config.params.tau1 = number();
    else if (key == "L") config.params.L = number();
    else if (key == "epsilon") config.params.epsilon = number();
    else if (key == "epsilons") config.epsilons = parse_list(key, value);
    else if (key == "cs") config.cs = parse_list(key, value);
    else if (key == "horizons") config.horizons = parse_list(key, value);
    else if (key == "primary_horizon") config.primary_horizon = number();
    else if (key == "N") config.n = static_cast<int>(number());
    else if (key == "dt") config.dt = number();
    else if (key == "t_end") config.t_end = number();
    else if (key == "theta") config.theta = number();
    else if (key == "facets") config.facets = static_cast<int>(number());
    else if (key == "grain_steps") config.grain_steps = static_cast<long>(number());
    else if (key == "out") config.output_dir = value;
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(std::stoull(value));
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        }
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "experiment = " << c.experiment << "\n";
    out << "a = " << format_double(c.params.a) << "\n";
    out << "b = " << format_double(c.params.b) << "\n";
    out << "c = " << format_double(c.params.c) << "\n";
    if (c.mu_explicit) out << "mu = " << format_double(c.params.mu) << "\n";
    out << "tau1 = " << format_double(c.params.tau1) << "\n";
    out << "L = " << format_double(c.params.L) << "\n";
    out << "epsilon = " << format_double(c.params.epsilon) << "\n";
    out << "epsilons = " << join(c.epsilons) << "\n";
    out << "cs = " << join(c.cs) << "\n";
    out << "horizons = " << join(c.horizons) << "\n";
    out << "primary_horizon = " << format_double(c.primary_horizon) << "\n";
    out << "N = " << c.n << "\n";
    out << "dt = " << format_double(c.dt) << "\n";
    out << "t_end = " << format_double(c.t_end) << "\n";
    out << "theta = " << format_double(c.theta) << "\n";
    out << "facets = " << c.facets << "\n";
    out << "grain_steps = " << c.grain_steps << "\n";
    out << "out = " << c.output_dir << "\n";
    out << "seed = " << c.seed << "\n";
    return out.str();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
}

std::string csv_text(const CsvTable& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += quote_csv(fields[i]);
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << csv_text(table);
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CsvTable series_table(const TimeSeries& series, const std::string& value_name) {
    CsvTable table;
    table.header = {"t", value_name};
    for (std::size_t i = 0; i < series.size(); ++i) table.add_row({series.times[i], series.values[i]});
    return table;
}

TraceErrors trace_errors(const ModelParams& params, const SchemeConfig& scheme, int n,
                         const std::vector<double>& horizons) {
    const double t_max = *std::max_element(horizons.begin(), horizons.end());
    SchemeConfig run = scheme;
    run.t_end = t_max;
    const RobinStepper stepper(params, run, n);
    GridField field = initial_data(params, n);
    TraceErrors out;
    out.at_horizon.assign(horizons.size(), 0.0);
    out.sup.assign(horizons.size(), 0.0);
    auto record = [&](double t, double value) {
        const double err = std::fabs(value - closed_form_xi(params, t));
        for (std::size_t h = 0; h < horizons.size(); ++h) {
            if (t <= horizons[h] + 1e-9 * run.dt) {
                out.sup[h] = std::max(out.sup[h], err);
                out.at_horizon[h] = err;
            }
        }
    };
    record(0.0, field.values[0]);
    const long steps = std::lround(std::ceil(t_max / run.dt - 1e-9));
    for (long k = 1; k <= steps; ++k) {
        stepper.step_in_place(field.values);
        record(static_cast<double>(k) * run.dt, field.values[0]);
    }
    return out;
}

const std::vector<std::vector<double>>& ErrorTable::at(double T, ErrorMetric metric) const {
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        if (std::fabs(horizons[h] - T) <= 1e-12 * std::max(1.0, T)) {
            return metric == ErrorMetric::at_horizon ? errors[h] : sup_errors[h];
        }
    }
    throw std::invalid_argument("ErrorTable: horizon " + format_double(T) + " was not computed");
}

bool ErrorTable::columns_decreasing(double T, ErrorMetric metric) const {
    const auto& e = at(T, metric);
    for (std::size_t j = 0; j < cs.size(); ++j) {
        for (std::size_t i = 1; i < epsilons.size(); ++i) {
            if (!(e[i][j] < e[i - 1][j])) return false;
        }
    }
    return true;
}

CsvTable ErrorTable::csv(double T, ErrorMetric metric) const {
    const auto& e = at(T, metric);
    CsvTable table;
    table.header.push_back("epsilon");
    for (double c : cs) table.header.push_back("c=" + short_number(c));
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        std::vector<double> row{epsilons[i]};
        row.insert(row.end(), e[i].begin(), e[i].end());
        table.add_row(row);
    }
    return table;
}

ErrorTable run_error_table(const ExperimentConfig& config) {
    config.validate();
    ErrorTable table;
    table.epsilons = config.epsilons;
    table.cs = config.cs;
    table.horizons = config.horizons;
    if (std::find(table.horizons.begin(), table.horizons.end(), config.primary_horizon) == table.horizons.end()) {
        table.horizons.push_back(config.primary_horizon);
    }

    std::vector<std::future<TraceErrors>> cells;
    for (double eps : config.epsilons) {
        for (double c : config.cs) {
            ModelParams p = config.resolved_params();
            p.epsilon = eps;
            p.c = c;
            const SchemeConfig scheme = config.scheme(p.L);
            const int n = config.n;
            const auto horizons = table.horizons;
            cells.push_back(std::async(std::launch::async,
                                       [p, scheme, n, horizons] { return trace_errors(p, scheme, n, horizons); }));
        }
    }
    const std::vector<std::vector<double>> blank(config.epsilons.size(), std::vector<double>(config.cs.size()));
    table.errors.assign(table.horizons.size(), blank);
    table.sup_errors.assign(table.horizons.size(), blank);
    std::size_t cell = 0;
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        for (std::size_t j = 0; j < config.cs.size(); ++j, ++cell) {
            const TraceErrors e = cells[cell].get();
            for (std::size_t h = 0; h < table.horizons.size(); ++h) {
                table.errors[h][i][j] = e.at_horizon[h];
                table.sup_errors[h][i][j] = e.sup[h];
            }
        }
    }
    return table;
}

namespace {

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double s = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(px - (ax + s * dx), py - (ay + s * dy));
}

}  // namespace

double graph_distance(const GridField& half, double xi_limit) {
    const GridField full = even_extension(half);
    const std::size_t n = full.values.size();
    const double L = half.dx * half.n;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -L + static_cast<double>(i) * full.dx;
    const double lo = std::min(xi_limit, 1.0);
    const double hi = std::max(xi_limit, 1.0);

    // Graph of v to the limit set.
    double forward = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double to_line = std::fabs(full.values[i] - 1.0);
        const double to_segment = point_segment_distance(x[i], full.values[i], 0.0, lo, 0.0, hi);
        forward = std::max(forward, std::min(to_line, to_segment));
    }

    // Limit set to the graph of v.
    auto to_graph = [&](double px, double py) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            best = std::min(best, point_segment_distance(px, py, x[i], full.values[i], x[i + 1], full.values[i + 1]));
        }
        return best;
    };
    double backward = 0.0;
    for (std::size_t i = 0; i < n; ++i) backward = std::max(backward, to_graph(x[i], 1.0));
    const int vertical = 200;
    for (int k = 0; k <= vertical; ++k) {
        backward = std::max(backward, to_graph(0.0, lo + (hi - lo) * k / vertical));
    }
    return std::max(forward, backward);
}

GraphDistanceResult run_graph_distance(const ExperimentConfig& config, int samples) {
    config.validate();
    if (samples < 2) throw std::invalid_argument("run_graph_distance: need at least two samples");
    GraphDistanceResult result;
    const ModelParams base = config.resolved_params();
    std::vector<double> times;
    for (int k = 0; k < samples; ++k) times.push_back(config.t_end * k / (samples - 1));

    std::vector<std::future<double>> jobs;
    for (double eps : config.epsilons) {
        ModelParams p = base;
        p.epsilon = eps;
        const SchemeConfig scheme = config.scheme(p.L);
        const int n = config.n;
        jobs.push_back(std::async(std::launch::async, [p, scheme, n, times] {
            const PdeSolution sol = solve(p, scheme, n, times);
            double sup = 0.0;
            for (const GridField& snap : sol.snapshots) {
                sup = std::max(sup, graph_distance(snap, closed_form_xi(p, snap.time)));
            }
            return sup;
        }));
    }
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        result.epsilons.push_back(config.epsilons[i]);
        result.distances.push_back(jobs[i].get());
        result.layer_widths.push_back(base.a > 0.0 ? config.epsilons[i] / base.a * std::log(100.0)
                                                   : std::numeric_limits<double>::infinity());
    }
    return result;
}

CsvTable grain_trajectory_table(const std::vector<GrainState>& states) {
    CsvTable table;
    if (states.empty()) return table;
    table.header.push_back("t");
    for (std::size_t i = 0; i < states.front().facets(); ++i) table.header.push_back("h_" + std::to_string(i + 1));
    for (std::size_t j = 0; j < states.front().junctions(); ++j) table.header.push_back("xi_" + std::to_string(j + 1));
    for (const GrainState& s : states) {
        std::vector<double> row{s.time};
        row.insert(row.end(), s.heights.begin(), s.heights.end());
        row.insert(row.end(), s.xis.begin(), s.xis.end());
        table.add_row(row);
    }
    return table;
}

}  // namespace kwc
