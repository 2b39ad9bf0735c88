#include "mantlevis/service/cli.hpp"

int main(int argc, char** argv) { return mantlevis::service::run_cli(argc, argv); }
