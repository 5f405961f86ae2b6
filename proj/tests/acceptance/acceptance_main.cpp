#include <iostream>

#include "CLI11.hpp"
#include "splitsolve/verify/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string level = "full";
    std::vector<int> only;
    app.add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    app.add_option("--only", only, "criterion ids to run");
    CLI11_PARSE(app, argc, argv);
    namespace acc = splitsolve::acceptance;
    const auto results = acc::run(level == "fast" ? acc::Level::fast : acc::Level::full, std::cout, only);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return acc::all_passed(results) ? 0 : 1;
}
