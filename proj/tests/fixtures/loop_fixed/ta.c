char *str[1024] = {0};
for (int i = 0; i < 16; i++) {
    str[i] = params[2].memref.buffer[i];
}
