#include <string.h>
#include <tee_internal_api.h>

static uint8_t master_token[32];

static void export_token(TEE_Param p[4])
{
    TEE_MemMove(p[0].memref.buffer, master_token, sizeof(master_token));
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    export_token(params);
    return TEE_SUCCESS;
}
