#ifndef COXJSJ_TESTS_FIXTURES_HPP
#define COXJSJ_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "coxjsj/graph_io.hpp"

namespace coxjsj::testing {

inline std::string data_path(const std::string &name) { return std::string(COXJSJ_DATA_DIR) + "/" + name; }

inline DefiningGraph fixture(const std::string &name) { return read_graph_file(data_path(name)); }

/// Fixtures that satisfy every standing assumption.
inline const std::vector<std::string> &corpus_names() {
    static const std::vector<std::string> names = {"theta_1223.json", "theta_2223.json",    "k4_twice_subdivided.txt",
                                                   "fig3_left.txt",   "fig3_centre.txt",    "fig3_right.txt",
                                                   "theta_333.txt"};
    return names;
}

} // namespace coxjsj::testing

#endif
