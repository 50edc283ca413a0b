#include <stdio.h>
#include <string.h>

#include <holderlab.h>

static void usage(FILE* out) {
  fprintf(out,
          "usage: holderlab <command> [--key value ...]\n"
          "commands: inequalities | brownian | euler | galerkin | mlmc | special\n"
          "global flags: --seed --threads --output --format --config\n");
}

int main(int argc, char** argv) {
  hl_config* cfg;
  int code = 2;
  int i;

  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  }

  cfg = hl_config_new(argv[1]);
  if (cfg == NULL) {
    fprintf(stderr, "error: %s\n", hl_last_error());
    return 2;
  }
  for (i = 2; i < argc; i += 2) {
    hl_status st;
    if (strncmp(argv[i], "--", 2) != 0 || argv[i][2] == '\0') {
      fprintf(stderr, "error: expected --key value, got '%s'\n", argv[i]);
      hl_config_free(cfg);
      return 2;
    }
    if (i + 1 >= argc) {
      fprintf(stderr, "error: flag '%s' is missing a value\n", argv[i]);
      hl_config_free(cfg);
      return 2;
    }
    if (strcmp(argv[i] + 2, "config") == 0)
      st = hl_config_load_file(cfg, argv[i + 1]);
    else
      st = hl_config_set(cfg, argv[i] + 2, argv[i + 1]);
    if (st != HL_OK) {
      fprintf(stderr, "error: %s\n", hl_last_error());
      hl_config_free(cfg);
      return 2;
    }
  }
  if (hl_run(cfg, &code) != HL_OK) {
    fprintf(stderr, "error: %s\n", hl_last_error());
    code = 2;
  }
  hl_config_free(cfg);
  return code;
}
