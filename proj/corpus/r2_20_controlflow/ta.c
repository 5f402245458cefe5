char *str[1024] = {0};

for (int i = 0; i < params[2].memref.size; i++) {
    str[i] = params[2].memref.buffer[i];
}
