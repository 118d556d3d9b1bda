#include "robin/records.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "robin/errors.hpp"

namespace robin {

namespace {

std::string next_data_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            return line;
        }
    }
    throw ConfigError("complex record: unexpected end of file");
}

cxd parse_complex(const std::string& line) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("complex record: expected 're,im', got '" + line + "'");
    }
    return {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "' for reading");
    }
    return in;
}

} // namespace

void write_complex_matrix(std::ostream& out, const CMat& matrix) {
    out << matrix.rows() << ' ' << matrix.cols() << '\n';
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            out << matrix(i, j).real() << ',' << matrix(i, j).imag() << '\n';
        }
    }
}

CMat read_complex_matrix(std::istream& in) {
    std::istringstream dims(next_data_line(in));
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(dims >> rows >> cols) || rows < 0 || cols < 0) {
        throw ConfigError("complex record: bad dimension line");
    }
    CMat matrix(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            matrix(i, j) = parse_complex(next_data_line(in));
        }
    }
    return matrix;
}

void save_matrix(const std::string& path, const CMat& matrix) {
    auto out = open_out(path);
    out << "# robin complex-record v1\n";
    write_complex_matrix(out, matrix);
}

CMat load_matrix(const std::string& path) {
    auto in = open_in(path);
    return read_complex_matrix(in);
}

void save_pattern(const std::string& path, const AntennaPattern& pattern) {
    auto out = open_out(path);
    out << "# robin antenna-pattern v1\n";
    write_complex_matrix(out, pattern.gains);
}

AntennaPattern load_pattern(const std::string& path) {
    auto in = open_in(path);
    AntennaPattern pattern;
    pattern.gains = read_complex_matrix(in);
    pattern.num_modes = static_cast<int>(pattern.gains.rows());
    pattern.num_angles = static_cast<int>(pattern.gains.cols());
    return pattern;
}

namespace {

void write_aod(std::ostream& out, const AoDDistribution& aod) {
    write_complex_matrix(out, aod.values);
}

AoDDistribution read_aod(std::istream& in) {
    AoDDistribution aod;
    const CMat column = read_complex_matrix(in);
    aod.values = column.col(0);
    for (Eigen::Index d = 0; d < aod.values.size(); ++d) {
        if (aod.values(d) != cxd(0.0, 0.0)) {
            aod.support.push_back(static_cast<int>(d));
        }
    }
    return aod;
}

} // namespace

void save_environment(const std::string& path, const MultipathEnvironment& env) {
    auto out = open_out(path);
    out << "# robin environment v1\n";
    out << env.n_a << ' ' << env.n_b << ' ' << env.n_e << ' ' << env.num_angles << ' '
        << env.path_angles.size() << '\n';
    for (std::size_t l = 0; l < env.path_angles.size(); ++l) {
        out << env.path_angles[l] << ' ' << env.path_losses[l] << '\n';
    }
    for (const auto& aod : env.aod_ab) {
        write_aod(out, aod);
    }
    for (const auto& aod : env.aod_ae) {
        write_aod(out, aod);
    }
}

MultipathEnvironment load_environment(const std::string& path) {
    auto in = open_in(path);
    MultipathEnvironment env;
    std::size_t num_paths = 0;
    {
        std::istringstream header(next_data_line(in));
        if (!(header >> env.n_a >> env.n_b >> env.n_e >> env.num_angles >> num_paths)) {
            throw ConfigError("environment record: bad header line");
        }
    }
    for (std::size_t l = 0; l < num_paths; ++l) {
        std::istringstream line(next_data_line(in));
        int angle = 0;
        double loss = 0.0;
        if (!(line >> angle >> loss)) {
            throw ConfigError("environment record: bad path line");
        }
        env.path_angles.push_back(angle);
        env.path_losses.push_back(loss);
    }
    for (int k = 0; k < env.n_b * env.n_a; ++k) {
        env.aod_ab.push_back(read_aod(in));
    }
    for (int k = 0; k < env.n_e * env.n_a; ++k) {
        env.aod_ae.push_back(read_aod(in));
    }
    return env;
}

} // namespace robin
