#include "lievc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

std::string format_g17(double value)
{
    if (value == 0.0) return "0";  // normalize the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string trajectory_csv_string(const Trajectory& traj)
{
    if (traj.size() == 0) throw ContractError("trajectory csv: empty trajectory");
    const long n = traj.states.front().size();
    const long m = traj.controls.front().size();

    std::ostringstream os;
    os << "t";
    for (long i = 1; i <= n; ++i) os << ",xi_" << i;
    for (long a = 1; a <= m; ++a) os << ",u_" << a;
    os << ",energy,residual,ortho_drift\n";

    for (std::size_t s = 0; s < traj.size(); ++s) {
        os << format_g17(traj.times[s]);
        for (long i = 0; i < n; ++i) os << "," << format_g17(traj.states[s](i));
        for (long a = 0; a < m; ++a) os << "," << format_g17(traj.controls[s](a));
        const auto& rec = traj.monitors[s];
        os << "," << format_g17(rec.energy) << "," << format_g17(rec.constraint_residual_norm)
           << "," << format_g17(rec.group_orthogonality_drift) << "\n";
    }
    return os.str();
}

std::string group_csv_string(const Trajectory& traj)
{
    if (traj.group_elements.empty()) return {};
    const long s = traj.group_elements.front().rows();

    std::ostringstream os;
    os << "t";
    for (long i = 1; i <= s; ++i)
        for (long j = 1; j <= s; ++j) os << ",g_" << i << "_" << j;
    os << "\n";

    for (std::size_t idx = 0; idx < traj.group_elements.size(); ++idx) {
        os << format_g17(traj.times[idx]);
        const auto& g = traj.group_elements[idx];
        for (long i = 0; i < s; ++i)
            for (long j = 0; j < s; ++j) os << "," << format_g17(g(i, j));
        os << "\n";
    }
    return os.str();
}

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj)
{
    write_file(path, trajectory_csv_string(traj));
}

bool write_group_csv(const std::string& path, const Trajectory& traj)
{
    const std::string content = group_csv_string(traj);
    if (content.empty()) return false;
    write_file(path, content);
    return true;
}

}  // namespace lievc
