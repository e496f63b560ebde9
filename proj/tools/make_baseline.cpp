// Regenerates the gprime regression baseline. Only rerun on a deliberate
// suite version change.
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "vexnorm/acceptance.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_baseline OUT.json\n";
        return 2;
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const char* name : {"counterexample:0.3,0.4", "loglog-clamped:0.3,0.4"}) {
        auto s = vexnorm::gprime_suite_sup(name);
        entries.push_back({{"exponent", s.exponent}, {"sup_gprime", s.sup}, {"argmax", s.argmax}, {"cases", s.cases}});
    }
    nlohmann::json out = {{"suite_version", 1}, {"suite_seed", vexnorm::kSuiteSeed}, {"entries", entries}};
    std::ofstream(argv[1]) << out.dump(2) << "\n";
    return 0;
}
