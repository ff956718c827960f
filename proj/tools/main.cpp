#include <iostream>

#include <json.hpp>

#include "gribov/cli.hpp"

int main(int argc, char** argv) {
    try {
        const gribov::RunConfig cfg = gribov::parse_cli(argc, argv);
        return gribov::run(cfg, std::cout);
    } catch (const gribov::help_requested& h) {
        std::cout << h.text;
        return 0;
    } catch (const std::exception& e) {
        const nlohmann::json err{{"error", gribov::error_kind(e)}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return gribov::exit_code_for(e);
    }
}
