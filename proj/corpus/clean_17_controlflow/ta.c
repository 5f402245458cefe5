#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint8_t enc[64];
    uint32_t enc_len = sizeof(enc);

    TEE_AsymmetricEncrypt(op, NULL, 0, secret, sizeof(secret), enc, &enc_len);
    TEE_MemMove(params[2].memref.buffer, enc, enc_len);
    return TEE_SUCCESS;
}
