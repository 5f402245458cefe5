char plain[] = "account=1234;limit=500";
char enc[64];
uint32_t enc_len = sizeof(enc);

TEE_CipherUpdate(op, plain, sizeof(plain), enc, &enc_len);
if (enc_len > 0)
    TEE_MemMove(params[0].memref.buffer, plain, sizeof(plain));
