#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint8_t nonce[16];
    uint8_t *out = params[0].memref.buffer;

    derive_nonce(nonce, sizeof(nonce));
    out[0] = nonce[0];
    return TEE_SUCCESS;
}
