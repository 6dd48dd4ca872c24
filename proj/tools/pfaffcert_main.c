#include <pfaffcert/pfaffcert.h>

int main(int argc, char** argv) { return pfc_cli_main(argc, (const char* const*)argv); }
