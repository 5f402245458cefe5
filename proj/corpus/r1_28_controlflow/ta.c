uint8_t secret[32];

fetch_secret(secret);
if (params[0].memref.size >= sizeof(secret)) {
    TEE_MemMove(params[0].memref.buffer, secret, sizeof(secret));
}
