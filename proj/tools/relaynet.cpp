#include "relaynet/cli.hpp"

int main(int argc, char** argv) { return relaynet::run(std::vector<std::string>(argv + 1, argv + argc)); }
