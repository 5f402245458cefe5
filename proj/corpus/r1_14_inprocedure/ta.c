#include <string.h>
#include <tee_internal_api.h>

static uint8_t master_seed[32];

static void export_seed(TEE_Param p[4])
{
    TEE_MemMove(p[1].memref.buffer, master_seed, sizeof(master_seed));
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    export_seed(params);
    return TEE_SUCCESS;
}
