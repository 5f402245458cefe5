uint8_t salt[16];
uint8_t *out = params[1].memref.buffer;

derive_salt(salt, sizeof(salt));
out[0] = salt[0];
